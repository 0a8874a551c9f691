import logging
import multiprocessing
import resource
import time
from concurrent.futures import Future, ProcessPoolExecutor, wait
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

from src.chow.ChowRing import ChowRing
from src.chow.MultiDegree import MultiDegree
from src.exceptions import Interrupted, MemoryBudgetExceeded
from src.rootsys.RootSystem import RootSystem
from src.search.DiagramSymmetry import DiagramSymmetry
from src.search.SearchConfig import SearchConfig
from src.search.SubtreeExplorer import SubtreeExplorer, SubtreeOutcome
from src.search.Witness import Witness
from src.storage.CheckpointStorageInterface import CheckpointStorageInterface
from src.storage.SettledEntry import SettledEntry
from src.storage.jsonl.JsonlCheckpointStorage import JsonlCheckpointStorage

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
# how long an interrupted pool gets to hand back its aborted tasks
SALVAGE_SECONDS = 30.0


class SearchResult:
    """
    Outcome of a search: the largest total degree N of a multiplicity-free divisor
    monomial found, a re-verified witness, and whether the search covered everything.
    """

    def __init__(
        self,
        max_degree: int,
        witness: Witness,
        exhaustive: bool,
        solutions: Optional[Set[MultiDegree]] = None,
        stats: Optional[Dict[str, int]] = None,
    ) -> None:
        self.max_degree = max_degree
        self.witness = witness
        self.exhaustive = exhaustive
        self.solutions = solutions
        self.stats = stats or {}

    def __repr__(self) -> str:
        return f"SearchResult(max_degree={self.max_degree}, witness={self.witness}, exhaustive={self.exhaustive})"

    def __str__(self) -> str:
        return self.__repr__()


class PlanItem:
    """
    A multiplicity-free node near the root, in DFS preorder. Task items hand their
    subtree to an explorer; node items are expanded by the planner itself.
    """

    def __init__(self, deg: MultiDegree, is_task: bool, ancestors: Tuple[int, ...]) -> None:
        self.deg = deg
        self.is_task = is_task
        self.ancestors = ancestors


class MultiplicityFreeSearch:
    """
    Maximizes n_1 + ... + n_r over multiplicity-free monomials [D_1]^n_1 ... [D_r]^n_r.

    The top `split_depth` levels of the DFS are expanded here; every multiplicity-free
    node at that depth becomes a subtree task. Tasks run inline or in a process pool and
    their outcomes are reduced strictly in task order, so results do not depend on the
    number of workers.
    """

    def __init__(
        self,
        rs: RootSystem,
        cfg: SearchConfig,
        storage: Optional[CheckpointStorageInterface] = None,
    ) -> None:
        self.rs = rs
        self.cfg = cfg
        if storage is None and cfg.checkpointing:
            storage = JsonlCheckpointStorage(cfg.checkpoint_path, cfg.resume_path, cfg.checkpoint_interval)
        self.storage = storage
        self.symmetry = DiagramSymmetry(rs.datum, cfg.symmetry_reduction)
        self._reduced = 0

    def header(self) -> Dict[str, Any]:
        return {
            "version": CHECKPOINT_VERSION,
            "label": self.rs.label,
            "rank": self.rs.rank,
            "matrix": [list(row) for row in self.rs.datum.matrix],
            "symmetrizer": list(self.rs.datum.symmetrizer),
            "order": "bourbaki",
            "symmetry": self.cfg.symmetry_reduction,
            "target": self.cfg.target,
        }

    def run(self) -> SearchResult:
        started = time.monotonic()
        total = SubtreeOutcome(-1, self.cfg.checkpointing, self.cfg.collect_solutions)
        memo = self._open(total)
        sink = self.storage.save if self.storage is not None else None
        explorer = SubtreeExplorer(self.rs, self.cfg, memo, sink=sink)

        zero = MultiDegree.zero(self.rs.rank)
        total.offer(zero)
        hit: Optional[MultiDegree] = zero if self.cfg.target == 0 else None

        items: List[PlanItem] = []
        shallow_complete: List[bool] = []
        if hit is None:
            if self.cfg.split_depth == 0:
                items.append(PlanItem(zero, True, ()))
            else:
                self._plan(explorer, zero, explorer.ring.unit(), 1, (), items, shallow_complete, total)
        self._save(total)

        tasks = [item for item in items if item.is_task]
        logger.info(
            "%s: %d subtree tasks, %d planned nodes, symmetry group of order %d",
            self.rs.label, len(tasks), len(items) - len(tasks), self.symmetry.order,
        )

        stop_event = multiprocessing.Event()
        executor = None
        futures: List[Future] = []
        self._reduced = 0
        try:
            if self.cfg.thread_count > 1 and len(tasks) > 1:
                executor = ProcessPoolExecutor(
                    max_workers=self.cfg.thread_count,
                    initializer=_init_worker,
                    initargs=(self.rs, self.cfg, memo, stop_event),
                )
                futures = [executor.submit(_explore_task, n, item.deg.n) for n, item in enumerate(tasks)]
                outcomes: Iterator[SubtreeOutcome] = (future.result() for future in futures)
            else:
                outcomes = (explorer.explore(n, item.deg) for n, item in enumerate(tasks))

            if hit is None:
                hit = self._reduce(items, outcomes, shallow_complete, total)
        except KeyboardInterrupt:
            stop_event.set()
            self._salvage(futures, total)
            self._save(total)
            self._close()
            raise Interrupted("search interrupted; resume from the checkpoint to continue") from None
        except MemoryBudgetExceeded:
            stop_event.set()
            self._salvage(futures, total)
            self._save(total)
            self._close()
            raise
        finally:
            if executor is not None:
                stop_event.set()
                executor.shutdown(wait=True, cancel_futures=True)

        if hit is None:
            # post-order: a planned node is settled only once all of its subtree is
            for index, item in reversed(list(enumerate(i for i in items if not i.is_task))):
                if shallow_complete[index]:
                    total.settle(item.deg, 1, True)
            self._save(total)
        self._close()

        result = self._result(hit, total, all(shallow_complete) and total.complete)
        result.stats["seconds"] = time.monotonic() - started
        # ru_maxrss is in KiB; the children are the pool workers reaped at shutdown
        own = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
        workers = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss * 1024
        result.stats["peak_bytes"] = max(own, workers)
        result.stats["worker_peak_bytes"] = workers
        logger.info("%s: N = %d (%s), %s", self.rs.label, result.max_degree, "exhaustive" if result.exhaustive else "partial", result.stats)
        return result

    def _open(self, total: SubtreeOutcome) -> Dict[Tuple[int, ...], SettledEntry]:
        memo: Dict[Tuple[int, ...], SettledEntry] = {}
        if self.storage is None:
            return memo
        kept = 0
        for entry in self.storage.open(self.header()):
            if entry.mf:
                total.offer(MultiDegree(entry.n))
                memo[entry.n] = entry
            elif kept < self.cfg.memo_capacity:
                memo[entry.n] = entry
                kept += 1
        return memo

    def _plan(
        self,
        explorer: SubtreeExplorer,
        deg: MultiDegree,
        vector,
        depth: int,
        ancestors: Tuple[int, ...],
        items: List[PlanItem],
        shallow_complete: List[bool],
        total: SubtreeOutcome,
    ) -> None:
        children, abandoned = explorer.children(deg, vector, total)
        if abandoned:
            total.complete = False
            for index in ancestors:
                shallow_complete[index] = False
        for _, _, child, product in children:
            if depth >= self.cfg.split_depth:
                items.append(PlanItem(child, True, ancestors))
                continue
            index = len(shallow_complete)
            shallow_complete.append(True)
            items.append(PlanItem(child, False, ancestors))
            self._plan(explorer, child, product, depth + 1, ancestors + (index,), items, shallow_complete, total)

    def _reduce(
        self,
        items: List[PlanItem],
        outcomes: Iterator[SubtreeOutcome],
        shallow_complete: List[bool],
        total: SubtreeOutcome,
    ) -> Optional[MultiDegree]:
        """
        Walk the plan in preorder, folding task outcomes in as they come. Returns the
        first node reaching the target, if any.
        """
        target = self.cfg.target
        done = 0
        for item in items:
            total.offer(item.deg)
            if target is not None and item.deg.total >= target:
                return item.deg
            if not item.is_task:
                continue

            outcome = next(outcomes)
            done += 1
            self._reduced = done
            for deg in outcome.best:
                total.offer(deg)
            if outcome.solutions is not None:
                total.solutions |= outcome.solutions
            if outcome.entries is not None:
                total.entries.extend(outcome.entries)
            total.evaluated += outcome.evaluated
            total.pruned += outcome.pruned
            total.abandoned += outcome.abandoned
            self._save(total)

            if outcome.hit is not None:
                return outcome.hit
            if not outcome.complete:
                total.complete = False
                for index in item.ancestors:
                    shallow_complete[index] = False
            logger.info(
                "task %d done (%s): best total so far %d, %d monomials evaluated",
                done, item.deg, total.best_total, total.evaluated,
            )
        return None

    def _result(self, hit: Optional[MultiDegree], total: SubtreeOutcome, complete: bool) -> SearchResult:
        if hit is not None:
            chosen = hit
            exhaustive = False
        else:
            candidates: Set[MultiDegree] = set()
            for deg in total.best:
                candidates |= self.symmetry.orbit(deg)
            # smallest index sequence [1, 1, 2] < [1, 2, 2] is the largest exponent vector
            chosen = max(candidates)
            exhaustive = complete and total.abandoned == 0

        witness = verify_multidegree(self.rs, chosen, ChowRing(self.rs, cover_cache_size=self.cfg.cover_cache_size))
        assert witness is not None, f"{chosen} was recorded as multiplicity-free but does not re-verify"

        solutions = None
        if total.solutions is not None:
            solutions = set()
            for deg in total.solutions:
                solutions |= self.symmetry.orbit(deg)

        stats = {"evaluated": total.evaluated, "pruned": total.pruned, "abandoned": total.abandoned}
        return SearchResult(chosen.total, witness, exhaustive, solutions, stats)

    def _save(self, total: SubtreeOutcome) -> None:
        if self.storage is not None and total.entries:
            self.storage.save(total.entries)
            total.entries.clear()

    def _salvage(self, futures: List[Future], total: SubtreeOutcome) -> None:
        """
        After an interrupt, collect the settled entries of pool tasks not yet reduced.
        With the stop flag set, running tasks return early with what they settled.
        """
        pending = futures[self._reduced:]
        if self.storage is None or not pending:
            return
        done, _ = wait(pending, timeout=SALVAGE_SECONDS)
        for future in pending:
            if future not in done or future.cancelled() or future.exception() is not None:
                continue
            entries = future.result().entries
            if entries:
                total.entries.extend(entries)
        logger.info("salvaged %d of %d unreduced tasks", len(done), len(pending))

    def _close(self) -> None:
        if self.storage is not None:
            self.storage.close()


_worker: Optional[SubtreeExplorer] = None


def _init_worker(rs: RootSystem, cfg: SearchConfig, memo: Dict[Tuple[int, ...], SettledEntry], stop_event) -> None:
    global _worker
    _worker = SubtreeExplorer(rs, cfg, memo, should_stop=stop_event.is_set)


def _explore_task(index: int, n: Tuple[int, ...]) -> SubtreeOutcome:
    return _worker.explore(index, MultiDegree(n))


def max_multiplicity_free_degree(
    rs: RootSystem,
    cfg: SearchConfig,
    storage: Optional[CheckpointStorageInterface] = None,
) -> SearchResult:
    """
    Largest total degree of a multiplicity-free product of Schubert divisors.

    Raises:
        Interrupted: stopped by a signal, checkpoint flushed
        MemoryBudgetExceeded: the configured memory ceiling was crossed
    """
    return MultiplicityFreeSearch(rs, cfg, storage).run()


def verify_multidegree(rs: RootSystem, deg: MultiDegree, ring: Optional[ChowRing] = None) -> Optional[Witness]:
    """
    Recompute the monomial from scratch and certify it, independent of any search state.

    Returns:
        Optional[Witness]: witness at the smallest coefficient-1 element, None if the
        monomial is not multiplicity-free
    """
    ring = ring or ChowRing(rs)
    mf, element = ring.is_multiplicity_free(ring.product_of_divisors(deg))
    if not mf:
        return None
    return Witness(deg, element, ring.group.word_string(element))
