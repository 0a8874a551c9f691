from typing import Iterable, Tuple

from src.exceptions import InvalidDegree


class MultiDegree:
    """
    MultiDegree is the exponent vector (n_1, ..., n_r) of a divisor monomial
    [D_1]^n_1 ... [D_r]^n_r. Ordered lexicographically.
    """

    __slots__ = ("n", "total")

    def __init__(self, n: Iterable[int]) -> None:
        self.n: Tuple[int, ...] = tuple(int(x) for x in n)
        if any(x < 0 for x in self.n):
            raise InvalidDegree(f"multidegree {self.n} has a negative exponent")
        self.total = sum(self.n)

    @classmethod
    def zero(cls, rank: int) -> "MultiDegree":
        return cls((0,) * rank)

    @classmethod
    def parse(cls, text: str, rank: int) -> "MultiDegree":
        """
        Parse 'n1,n2,...,nr'.
        """
        try:
            values = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
        except ValueError:
            raise InvalidDegree(f"'{text}' is not a comma separated list of integers") from None
        if len(values) != rank:
            raise InvalidDegree(f"'{text}' has {len(values)} exponents, the rank is {rank}")
        return cls(values)

    @property
    def rank(self) -> int:
        return len(self.n)

    def raised(self, i: int) -> "MultiDegree":
        """
        Multidegree of this monomial times [D_i] (0-based i).
        """
        n = list(self.n)
        n[i] += 1
        return MultiDegree(n)

    def last_index(self) -> int:
        """
        Largest index with a nonzero exponent, -1 for the empty monomial.
        """
        for i in range(len(self.n) - 1, -1, -1):
            if self.n[i]:
                return i
        return -1

    def permuted(self, sigma: Tuple[int, ...]) -> "MultiDegree":
        """
        The multidegree m o sigma, i.e. entry i is n[sigma[i]].
        """
        return MultiDegree(self.n[s] for s in sigma)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiDegree):
            return NotImplemented
        return self.n == other.n

    def __hash__(self) -> int:
        return hash(self.n)

    def __lt__(self, other: "MultiDegree") -> bool:
        return self.n < other.n

    def __repr__(self) -> str:
        return f"MultiDegree(n={self.n}, total={self.total})"

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.n)
