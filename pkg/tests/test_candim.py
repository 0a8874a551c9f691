import pytest
from pydantic import ValidationError

from src import __version__
from src.candim.BoundReport import BoundReport, ReferenceRecord, WitnessRecord
from src.candim.CanonicalDimension import build_report, candim_upper_bound
from src.candim.ReferenceTable import ReferenceValue, reference_table
from src.exceptions import InvalidDegree
from src.search.MultiplicityFreeSearch import max_multiplicity_free_degree
from src.search.SearchConfig import SearchConfig


def report(**overrides) -> BoundReport:
    values = dict(
        label="A2",
        rank=2,
        dim_flag=3,
        max_mf_degree=3,
        bound=0,
        exhaustive=True,
        witness=WitnessRecord(degrees=[2, 1], word="1 2 1"),
        reference=ReferenceRecord(kind="exact", value=0),
        version=__version__,
    )
    values.update(overrides)
    return BoundReport(**values)


@pytest.mark.parametrize("dim, n, bound", [(3, 3, 0), (6, 3, 3), (36, 19, 17), (120, 34, 86), (5, 0, 5)])
def test_candim_upper_bound(dim, n, bound):
    assert candim_upper_bound(dim, n) == bound


@pytest.mark.parametrize("dim, n", [(3, 4), (3, -1)])
def test_candim_upper_bound_rejects_impossible_degrees(dim, n):
    with pytest.raises(InvalidDegree):
        candim_upper_bound(dim, n)


@pytest.mark.parametrize(
    "label, expected",
    [
        ("A5", ReferenceValue("exact", 0)),
        ("C3", ReferenceValue("exact", 0)),
        ("G2", ReferenceValue("exact", 3)),
        ("E6", ReferenceValue("paper_bound", 17)),
        ("E7", ReferenceValue("paper_bound", 37)),
        ("E8", ReferenceValue("paper_bound", 86)),
        ("B4", ReferenceValue("external_no_value")),
        ("D4", ReferenceValue("external_no_value")),
        ("F4", ReferenceValue("external_no_value")),
    ],
)
def test_reference_table(label, expected):
    assert reference_table(label) == expected


def test_reference_table_without_entry():
    assert reference_table(None) is None
    assert reference_table("custom") is None
    assert reference_table("E9") is None


def test_report_validation():
    assert report().bound == 0
    with pytest.raises(ValidationError):
        report(bound=1)
    with pytest.raises(ValidationError):
        report(label="G2", dim_flag=6, max_mf_degree=4, bound=2, reference=ReferenceRecord(kind="exact", value=3))
    with pytest.raises(ValidationError):
        report(rank=0)
    with pytest.raises(ValidationError):
        report(reference=ReferenceRecord(kind="guess", value=1))


def test_report_json():
    original = report()
    text = original.to_json()
    assert '"note"' in text
    again = BoundReport.from_json(text)
    assert again == original
    assert "stats" not in again.deterministic_part()
    assert set(BoundReport.json_schema()["required"]) >= {"label", "bound", "witness", "exhaustive"}


@pytest.mark.parametrize(
    "label, bound, kind, note",
    [
        ("A2", 0, "exact", "canonical dimension of type A is zero"),
        ("A3", 0, "exact", "canonical dimension of type A is zero"),
        ("G2", 3, "exact", "canonical dimension of G2 is 3"),
    ],
)
def test_build_report(root_system, label, bound, kind, note):
    rs = root_system(label)
    result = max_multiplicity_free_degree(rs, SearchConfig(thread_count=1))
    built = build_report(rs, result)
    assert built.bound == bound
    assert built.exhaustive
    assert built.reference.kind == kind
    assert built.known_value_note == note
    assert built.witness.degrees == list(result.witness.degrees.n)
    assert built.stats.seconds >= 0
    assert built.version == __version__


def test_build_report_carries_the_reference_note(root_system):
    rs = root_system("B2")
    built = build_report(rs, max_multiplicity_free_degree(rs, SearchConfig(thread_count=1)))
    assert built.reference.kind == "external_no_value"
    assert built.reference.value is None
    assert built.known_value_note == "computed elsewhere when the rank is a power of 2"
    assert BoundReport.from_json(built.to_json()).known_value_note == built.known_value_note


def test_build_report_for_a_custom_matrix(tmp_path):
    from src.rootsys.RootSystem import build_root_system
    from src.rootsys.file.CartanFileLoader import CartanFileLoader

    path = tmp_path / "a2.txt"
    path.write_text("2\n2 -1\n-1 2\n", encoding="utf-8")
    rs = build_root_system(CartanFileLoader(str(path)).load())
    built = build_report(rs, max_multiplicity_free_degree(rs, SearchConfig(thread_count=1)))
    assert built.label == "custom"
    assert built.reference is None
    assert built.known_value_note is None
    assert built.bound == 0
