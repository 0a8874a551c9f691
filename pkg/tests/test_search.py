import os

import pytest

from src.chow.ChowRing import ChowRing
from src.chow.MultiDegree import MultiDegree
from src.exceptions import CheckpointMismatch, Interrupted, MemoryBudgetExceeded
from src.rootsys.RootSystem import build_root_system
from src.rootsys.file.CartanFileLoader import CartanFileLoader
from src.search.DiagramSymmetry import DiagramSymmetry, diagram_automorphisms
from src.search.MultiplicityFreeSearch import MultiplicityFreeSearch, max_multiplicity_free_degree, verify_multidegree
from src.search.SearchConfig import SearchConfig
from src.search.SubtreeExplorer import SubtreeExplorer


def inline(**kwargs) -> SearchConfig:
    values = {"thread_count": 1, "split_depth": 1, "cover_cache_size": 4096}
    values.update(kwargs)
    return SearchConfig(**values)


def brute_force_solutions(ring: ChowRing):
    """
    Every multiplicity-free multidegree, by expanding all monomials without pruning.
    """
    rank = ring.rs.rank
    found = set()
    layer = {MultiDegree.zero(rank): ring.unit()}
    while layer:
        nxt = {}
        for deg, v in layer.items():
            if v.is_multiplicity_free()[0]:
                found.add(deg)
            if deg.total == ring.dim_flag:
                continue
            for i in range(max(deg.last_index(), 0), rank):
                nxt[deg.raised(i)] = ring.multiply_by_divisor(v, i)
        layer = nxt
    return found


def test_a2(root_system):
    result = max_multiplicity_free_degree(root_system("A2"), inline())
    assert result.max_degree == 3
    assert result.exhaustive
    assert result.witness.degrees == MultiDegree((2, 1))
    assert result.witness.word == "1 2 1"
    assert result.witness.total == 3


@pytest.mark.parametrize("label, n", [("A3", 6), ("G2", 3)])
def test_small_types(root_system, label, n):
    rs = root_system(label)
    result = max_multiplicity_free_degree(rs, inline())
    assert result.max_degree == n
    assert result.exhaustive
    assert verify_multidegree(rs, result.witness.degrees) == result.witness


def test_verify_multidegree(root_system):
    rs = root_system("A2")
    ring = ChowRing(rs)
    top = verify_multidegree(rs, MultiDegree((2, 1)))
    assert top.witness_element == ring.top_element
    assert verify_multidegree(rs, MultiDegree((3, 0))) is None
    assert verify_multidegree(rs, MultiDegree.zero(2)).witness_element == ring.group.identity()


@pytest.mark.parametrize("label", ["A2", "A3", "B3", "C3", "G2"])
@pytest.mark.parametrize("symmetry", [True, False])
def test_pruned_search_finds_every_solution(root_system, label, symmetry):
    rs = root_system(label)
    expected = brute_force_solutions(ChowRing(rs))
    result = max_multiplicity_free_degree(rs, inline(collect_solutions=True, symmetry_reduction=symmetry))
    assert result.solutions == expected
    assert result.max_degree == max(deg.total for deg in expected)


@pytest.mark.parametrize("label", ["A3", "A4", "D4", "B3"])
def test_symmetry_reduction_does_not_change_the_result(root_system, label):
    rs = root_system(label)
    reduced = max_multiplicity_free_degree(rs, inline(symmetry_reduction=True))
    full = max_multiplicity_free_degree(rs, inline(symmetry_reduction=False))
    assert reduced.max_degree == full.max_degree
    assert reduced.witness == full.witness
    assert reduced.exhaustive and full.exhaustive


@pytest.mark.parametrize("split_depth", [0, 1, 2, 3])
def test_split_depth_does_not_change_the_result(root_system, split_depth):
    rs = root_system("B3")
    baseline = max_multiplicity_free_degree(rs, inline(collect_solutions=True))
    result = max_multiplicity_free_degree(rs, inline(split_depth=split_depth, collect_solutions=True))
    assert result.witness == baseline.witness
    assert result.solutions == baseline.solutions
    assert result.exhaustive


def test_thread_count_does_not_change_the_result(root_system):
    rs = root_system("D4")
    one = max_multiplicity_free_degree(rs, inline(thread_count=1, split_depth=2))
    many = max_multiplicity_free_degree(rs, inline(thread_count=3, split_depth=2))
    assert (one.max_degree, one.witness, one.exhaustive) == (many.max_degree, many.witness, many.exhaustive)


def test_target_stops_early(root_system):
    rs = root_system("A3")
    result = max_multiplicity_free_degree(rs, inline(target=3))
    assert result.max_degree == 3
    assert not result.exhaustive
    assert verify_multidegree(rs, result.witness.degrees) is not None


def test_unreachable_target_runs_to_completion(root_system):
    result = max_multiplicity_free_degree(root_system("A2"), inline(target=10))
    assert result.max_degree == 3
    assert result.exhaustive


def test_zero_target(root_system):
    result = max_multiplicity_free_degree(root_system("A2"), inline(target=0))
    assert result.max_degree == 0
    assert result.witness.degrees == MultiDegree.zero(2)
    assert not result.exhaustive


def test_support_limit_clears_exhaustiveness(root_system):
    result = max_multiplicity_free_degree(root_system("A3"), inline(support_limit=1))
    assert not result.exhaustive
    assert result.stats["abandoned"] > 0


def test_memory_limit(root_system):
    explorer = SubtreeExplorer(root_system("A2"), inline(memory_limit_bytes=1))
    with pytest.raises(MemoryBudgetExceeded):
        explorer._check_memory()


def test_checkpoint_and_resume(root_system, tmp_path):
    rs = root_system("B3")
    path = tmp_path / "b3.jsonl"
    first = max_multiplicity_free_degree(rs, inline(checkpoint_path=str(path)))
    assert path.read_text(encoding="utf-8").count("\n") > 1

    resumed = max_multiplicity_free_degree(rs, inline(resume_path=str(path)))
    assert (resumed.max_degree, resumed.witness, resumed.exhaustive) == (first.max_degree, first.witness, True)
    # everything was settled, nothing is recomputed below the replayed nodes
    assert resumed.stats["evaluated"] < first.stats["evaluated"]


def test_interrupt_then_resume(root_system, tmp_path, monkeypatch):
    rs = root_system("B3")
    full = max_multiplicity_free_degree(rs, inline())

    original = SubtreeExplorer.explore

    def interrupted(self, index, deg):
        if index == 1:
            raise KeyboardInterrupt
        return original(self, index, deg)

    path = tmp_path / "b3.jsonl"
    monkeypatch.setattr(SubtreeExplorer, "explore", interrupted)
    with pytest.raises(Interrupted):
        max_multiplicity_free_degree(rs, inline(checkpoint_path=str(path)))
    monkeypatch.undo()

    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) > 1

    resumed = max_multiplicity_free_degree(rs, inline(checkpoint_path=str(path), resume_path=str(path)))
    assert (resumed.max_degree, resumed.witness, resumed.exhaustive) == (full.max_degree, full.witness, full.exhaustive)


def test_resume_into_a_new_file(root_system, tmp_path):
    rs = root_system("A3")
    old, new = tmp_path / "old.jsonl", tmp_path / "new.jsonl"
    max_multiplicity_free_degree(rs, inline(checkpoint_path=str(old)))
    result = max_multiplicity_free_degree(rs, inline(checkpoint_path=str(new), resume_path=str(old)))
    assert result.max_degree == 6
    assert new.read_text(encoding="utf-8").startswith(old.read_text(encoding="utf-8").splitlines()[0])


def test_resume_rejects_a_different_run(root_system, tmp_path):
    rs = root_system("A3")
    path = tmp_path / "a3.jsonl"
    max_multiplicity_free_degree(rs, inline(checkpoint_path=str(path)))
    with pytest.raises(CheckpointMismatch):
        max_multiplicity_free_degree(rs, inline(resume_path=str(path), symmetry_reduction=False))
    with pytest.raises(CheckpointMismatch):
        max_multiplicity_free_degree(root_system("B3"), inline(resume_path=str(path)))


def test_checkpoint_header(root_system):
    search = MultiplicityFreeSearch(root_system("E6"), inline(target=19))
    header = search.header()
    assert header.pop("matrix")[0] == [2, 0, -1, 0, 0, 0]
    assert header == {
        "version": 1,
        "label": "E6",
        "rank": 6,
        "symmetrizer": [1, 1, 1, 1, 1, 1],
        "order": "bourbaki",
        "symmetry": True,
        "target": 19,
    }


def test_resume_rejects_a_different_custom_matrix(tmp_path):
    b2 = build_root_system(CartanFileLoader.parse("2\n2 -2\n-1 2\n"))
    c2 = build_root_system(CartanFileLoader.parse("2\n2 -1\n-2 2\n"))
    path = tmp_path / "custom.jsonl"
    first = max_multiplicity_free_degree(b2, inline(checkpoint_path=str(path)))
    assert b2.label == c2.label == "custom"
    with pytest.raises(CheckpointMismatch):
        max_multiplicity_free_degree(c2, inline(resume_path=str(path)))
    again = max_multiplicity_free_degree(b2, inline(resume_path=str(path)))
    assert again.max_degree == first.max_degree


def test_interrupt_inside_a_task_keeps_settled_entries(root_system, tmp_path, monkeypatch):
    rs = root_system("B3")
    full = max_multiplicity_free_degree(rs, inline(split_depth=0))
    original = ChowRing.multiply_by_divisor
    calls = []

    def interrupted(self, v, i):
        calls.append(i)
        if len(calls) > full.stats["evaluated"] // 2:
            raise KeyboardInterrupt
        return original(self, v, i)

    path = tmp_path / "b3.jsonl"
    monkeypatch.setattr(ChowRing, "multiply_by_divisor", interrupted)
    with pytest.raises(Interrupted):
        max_multiplicity_free_degree(rs, inline(split_depth=0, checkpoint_path=str(path), checkpoint_interval=3600))
    monkeypatch.undo()

    # a single task spans the whole tree, so every entry was written while it ran
    assert len(path.read_text(encoding="utf-8").splitlines()) > 1
    resumed = max_multiplicity_free_degree(rs, inline(split_depth=0, resume_path=str(path)))
    assert (resumed.max_degree, resumed.witness, resumed.exhaustive) == (full.max_degree, full.witness, full.exhaustive)
    assert resumed.stats["evaluated"] < full.stats["evaluated"]


def test_peak_memory_counts_pool_workers(root_system):
    result = max_multiplicity_free_degree(root_system("D4"), inline(thread_count=2, split_depth=2))
    assert result.stats["worker_peak_bytes"] > 0
    assert result.stats["peak_bytes"] >= result.stats["worker_peak_bytes"]


@pytest.mark.parametrize(
    "label, order",
    [("A1", 1), ("A3", 2), ("A4", 2), ("B3", 1), ("C4", 1), ("D4", 6), ("D5", 2), ("E6", 2), ("E7", 1), ("F4", 1), ("G2", 1)],
)
def test_diagram_automorphisms(root_system, label, order):
    assert len(diagram_automorphisms(root_system(label).datum)) == order


def test_e6_automorphism_and_canonical_forms(root_system):
    symmetry = DiagramSymmetry(root_system("E6").datum)
    assert symmetry.permutations == [(0, 1, 2, 3, 4, 5), (5, 1, 4, 3, 2, 0)]
    assert symmetry.is_canonical(MultiDegree((1, 0, 0, 0, 0, 0)))
    assert not symmetry.is_canonical(MultiDegree((0, 0, 0, 0, 0, 1)))
    assert symmetry.orbit(MultiDegree((2, 1, 0, 0, 0, 0))) == {
        MultiDegree((2, 1, 0, 0, 0, 0)),
        MultiDegree((0, 1, 0, 0, 0, 2)),
    }
    assert DiagramSymmetry(root_system("E6").datum, enabled=False).order == 1


@pytest.mark.slow
def test_e6_reproduces_the_published_bound(root_system):
    rs = root_system("E6")
    result = max_multiplicity_free_degree(rs, SearchConfig(thread_count=os.cpu_count() or 1))
    assert result.max_degree == 19
    assert result.exhaustive
    assert verify_multidegree(rs, result.witness.degrees) == result.witness


@pytest.mark.extended
def test_e7_reproduces_the_published_bound(root_system, tmp_path):
    rs = root_system("E7")
    cfg = SearchConfig(thread_count=os.cpu_count() or 1, checkpoint_path=str(tmp_path / "e7.jsonl"))
    result = max_multiplicity_free_degree(rs, cfg)
    assert result.max_degree == 26
    assert result.exhaustive


@pytest.mark.extended
def test_e8_truncated_run_resumes_identically(root_system, tmp_path):
    rs = root_system("E8")
    path = tmp_path / "e8.jsonl"
    first = max_multiplicity_free_degree(rs, SearchConfig(target=10, thread_count=1, checkpoint_path=str(path)))
    again = max_multiplicity_free_degree(rs, SearchConfig(target=10, thread_count=1, resume_path=str(path)))
    assert first.max_degree == again.max_degree == 10
    assert first.witness == again.witness
