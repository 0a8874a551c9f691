from typing import Sequence, Tuple

from src.exceptions import InvalidRoot


class Root:
    """
    Root is a root written in the simple-root basis, alpha = sum_j coords[j] * alpha_j.
    """

    def __init__(self, coords: Sequence[int]) -> None:
        self.coords: Tuple[int, ...] = tuple(int(x) for x in coords)
        if not (all(x >= 0 for x in self.coords) or all(x <= 0 for x in self.coords)) or not any(self.coords):
            raise InvalidRoot(f"{self.coords} has mixed signs or is zero, so it is not a root")
        self.height = sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.coords))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Root):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: "Root") -> bool:
        return (self.height, self.coords) < (other.height, other.coords)

    def __repr__(self) -> str:
        return f"Root(coords={self.coords}, height={self.height})"

    def __str__(self) -> str:
        terms = [
            (f"{c}*a{j + 1}" if c != 1 else f"a{j + 1}")
            for j, c in enumerate(self.coords)
            if c != 0
        ]
        return " + ".join(terms)
