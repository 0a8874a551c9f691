import logging
import resource
from typing import Any, Callable, Dict, Iterable, List, Optional, Set, Tuple

from src.chow.ChowRing import ChowRing
from src.chow.ChowVector import ChowVector
from src.chow.MultiDegree import MultiDegree
from src.chow.backends import backend_for
from src.exceptions import MemoryBudgetExceeded
from src.rootsys.RootSystem import RootSystem
from src.search.DiagramSymmetry import DiagramSymmetry
from src.search.SearchConfig import SearchConfig
from src.storage.SettledEntry import SettledEntry

logger = logging.getLogger(__name__)

MEMORY_CHECK_EVERY = 4096

EntrySink = Callable[[Iterable[SettledEntry]], Any]


class SubtreeOutcome:
    """
    What one DFS subtree contributed: multiplicity-free multidegrees of maximal total,
    settled entries for the checkpoint, and whether the subtree was fully covered.
    With a sink, settled entries go straight to it instead of being held until the
    subtree is done.
    """

    def __init__(
        self, index: int, record_entries: bool, collect_solutions: bool, sink: Optional[EntrySink] = None
    ) -> None:
        self.index = index
        self.best_total = -1
        self.best: Set[MultiDegree] = set()
        self.solutions: Optional[Set[MultiDegree]] = set() if collect_solutions else None
        self.entries: Optional[List[SettledEntry]] = [] if record_entries and sink is None else None
        self.sink = sink
        self.complete = True
        self.hit: Optional[MultiDegree] = None
        self.aborted = False
        self.evaluated = 0
        self.pruned = 0
        self.abandoned = 0

    def offer(self, deg: MultiDegree) -> None:
        if deg.total > self.best_total:
            self.best_total = deg.total
            self.best = {deg}
        elif deg.total == self.best_total:
            self.best.add(deg)
        if self.solutions is not None:
            self.solutions.add(deg)

    def settle(self, deg: MultiDegree, minimum: Optional[int], mf: bool) -> None:
        if self.sink is not None:
            self.sink((SettledEntry(deg.n, minimum, mf),))
        elif self.entries is not None:
            self.entries.append(SettledEntry(deg.n, minimum, mf))

    def __repr__(self) -> str:
        return (
            f"SubtreeOutcome(index={self.index}, best_total={self.best_total}, complete={self.complete}, "
            f"hit={self.hit}, evaluated={self.evaluated})"
        )


Child = Tuple[int, int, MultiDegree, ChowVector]


class SubtreeExplorer:
    """
    Pruned depth-first search over nondecreasing divisor-index sequences below one
    multidegree, sharing each prefix product with all of its extensions.

    A monomial whose minimum coefficient is at least 2 (or which vanishes) is never
    extended: multiplying by a divisor can only keep or raise the minimum, so no
    extension can be multiplicity-free. This pruning is exact.
    """

    def __init__(
        self,
        rs: RootSystem,
        cfg: SearchConfig,
        memo: Optional[Dict[Tuple[int, ...], SettledEntry]] = None,
        should_stop: Optional[Callable[[], bool]] = None,
        sink: Optional[EntrySink] = None,
    ) -> None:
        self.rs = rs
        self.cfg = cfg
        self.ring = ChowRing(rs, backend_for(cfg.coefficient_backend), cfg.cover_cache_size)
        self.symmetry = DiagramSymmetry(rs.datum, cfg.symmetry_reduction)
        self.memo = memo or {}
        self.should_stop = should_stop or (lambda: False)
        self.sink = sink if cfg.checkpointing else None

    def children(self, deg: MultiDegree, vector: ChowVector, out: SubtreeOutcome) -> Tuple[List[Child], bool]:
        """
        Evaluate every unsettled canonical child of `deg`, settle the pruned ones, and
        return the multiplicity-free ones in branch order (most coefficient-1 terms
        first, then index). The flag is True when some child had to be abandoned for
        memory, which leaves the subtree incomplete.
        """
        expandable: List[Child] = []
        abandoned = False
        for i in range(max(deg.last_index(), 0), self.rs.rank):
            child = deg.raised(i)
            if not self.symmetry.is_canonical(child) or child.n in self.memo:
                continue

            product = self.ring.multiply_by_divisor(vector, i)
            out.evaluated += 1
            if out.evaluated % MEMORY_CHECK_EVERY == 0:
                self._check_memory()

            if self.cfg.support_limit and len(product) > self.cfg.support_limit:
                logger.warning("abandoning %s: %d terms exceed the support limit", child, len(product))
                out.abandoned += 1
                abandoned = True
                continue

            minimum = product.min_nonzero_coefficient()
            if minimum != 1:
                out.pruned += 1
                out.settle(child, minimum, False)
                continue
            expandable.append((-product.ones(), i, child, product))

        expandable.sort(key=lambda item: (item[0], item[1]))
        return expandable, abandoned

    def explore(self, index: int, deg: MultiDegree) -> SubtreeOutcome:
        """
        Run the DFS below a multiplicity-free multidegree (the task root itself has
        already been offered by the caller).
        """
        out = SubtreeOutcome(index, self.cfg.checkpointing, self.cfg.collect_solutions, self.sink)
        vector = self.ring.product_of_divisors(deg)
        out.complete = self._expand(deg, vector, out)
        if out.complete:
            out.settle(deg, 1, True)
        return out

    def _expand(self, deg: MultiDegree, vector: ChowVector, out: SubtreeOutcome) -> bool:
        if self.should_stop():
            out.aborted = True
            return False

        children, abandoned = self.children(deg, vector, out)
        complete = not abandoned
        for _, _, child, product in children:
            out.offer(child)
            if self.cfg.target is not None and child.total >= self.cfg.target:
                out.hit = child
                return False
            if self._expand(child, product, out):
                out.settle(child, 1, True)
            else:
                complete = False
                if out.hit is not None or out.aborted:
                    return False
        return complete

    def _check_memory(self) -> None:
        limit = self.cfg.memory_limit_bytes
        if not limit:
            return
        peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
        if peak > limit:
            raise MemoryBudgetExceeded(f"peak memory {peak} bytes exceeds the limit of {limit} bytes")
