from typing import Optional, Tuple

import numpy as np


class WeylElement:
    """
    WeylElement is an element w of the Weyl group stored as its action matrix on the
    root lattice: column j holds the simple-root coordinates of w(alpha_j).

    The matrix bytes are a canonical key, so equality and hashing are exact. The length
    is filled in by WeylGroup, which owns the positive roots needed to count inversions.
    """

    __slots__ = ("matrix", "key", "length", "_hash")

    def __init__(self, matrix: np.ndarray, length: Optional[int] = None) -> None:
        stored = np.ascontiguousarray(matrix, dtype=np.int8)
        stored.flags.writeable = False
        self.matrix = stored
        self.key = stored.tobytes()
        self.length = length
        self._hash = hash(self.key)

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    def sort_key(self) -> Tuple[int, bytes]:
        """
        Canonical element order: by length, then by matrix bytes.
        """
        return (self.length if self.length is not None else -1, self.key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "WeylElement") -> bool:
        return self.sort_key() < other.sort_key()

    def __reduce__(self):
        return (WeylElement, (self.matrix, self.length))

    def __repr__(self) -> str:
        return f"WeylElement(length={self.length}, matrix={self.matrix.tolist()})"

    def __str__(self) -> str:
        return self.__repr__()
