from typing import Any, Dict, Optional, Tuple


class SettledEntry:
    """
    SettledEntry records a multidegree whose DFS subtree is finished: the minimum
    coefficient of its monomial (None for the zero class) and whether it is
    multiplicity-free.
    """

    __slots__ = ("n", "min", "mf")

    def __init__(self, n: Tuple[int, ...], min: Optional[int], mf: bool) -> None:
        self.n = tuple(n)
        self.min = min
        self.mf = mf

    @property
    def total(self) -> int:
        return sum(self.n)

    def to_record(self) -> Dict[str, Any]:
        return {"n": list(self.n), "min": self.min, "mf": self.mf}

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "SettledEntry":
        return cls(tuple(record["n"]), record["min"], bool(record["mf"]))

    def __reduce__(self):
        return (SettledEntry, (self.n, self.min, self.mf))

    def __repr__(self) -> str:
        return f"SettledEntry(n={self.n}, min={self.min}, mf={self.mf})"

    def __str__(self) -> str:
        return self.__repr__()
