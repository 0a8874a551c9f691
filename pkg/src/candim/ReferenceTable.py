from typing import Literal, Optional

from src.exceptions import UnknownType
from src.rootsys.CartanTypes import parse_label

ReferenceKind = Literal["exact", "paper_bound", "external_no_value"]

KNOWN_BOUNDS = {"E6": 17, "E7": 37, "E8": 86}


class ReferenceValue:
    """
    Literature value of the canonical 0-dimension for a labeled type: an exact value,
    a published upper bound, or only a pointer to external work without a number.
    """

    def __init__(self, kind: ReferenceKind, value: Optional[int] = None, note: str = "") -> None:
        self.kind = kind
        self.value = value
        self.note = note

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReferenceValue):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __repr__(self) -> str:
        return f"ReferenceValue(kind={self.kind}, value={self.value})"

    def __str__(self) -> str:
        return self.__repr__()


def reference_table(label: Optional[str]) -> Optional[ReferenceValue]:
    """
    Look up what is known about cd_0 of the split group of a given type.

    Args:
        label (Optional[str]): Cartan type label such as "E6"; None or an unknown label
            (custom Cartan matrices) has no entry

    Returns:
        Optional[ReferenceValue]: the entry, None when there is none
    """
    if label is None:
        return None
    try:
        family, rank = parse_label(label)
    except UnknownType:
        return None
    key = f"{family}{rank}"

    if family in ("A", "C"):
        return ReferenceValue("exact", 0, f"canonical dimension of type {family} is zero")
    if key == "G2":
        return ReferenceValue("exact", 3, "canonical dimension of G2 is 3")
    if key in KNOWN_BOUNDS:
        return ReferenceValue("paper_bound", KNOWN_BOUNDS[key], f"published upper bound {KNOWN_BOUNDS[key]}")
    if family in ("B", "D"):
        return ReferenceValue("external_no_value", None, "computed elsewhere when the rank is a power of 2")
    return ReferenceValue("external_no_value", None, "no nontrivial upper bound is known")
