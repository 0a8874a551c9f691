from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.weyl.WeylElement import WeylElement

# int64 coefficients are widened to Python integers past this magnitude
WIDE_COEFFICIENT = 1 << 62


def coefficient_array(values: Sequence[int]) -> np.ndarray:
    if any(c >= WIDE_COEFFICIENT for c in values):
        return np.array(values, dtype=object)
    return np.array(values, dtype=np.int64)


class ChowVector:
    """
    ChowVector is a nonnegative integer combination of Schubert classes [Z_w], all of
    the same codimension `grade`. Zero coefficients are never stored; the empty support
    is the zero class.

    A vector is held either as a dict from elements to coefficients or as packed arrays
    (an (m, r, r) int8 stack of action matrices with m coefficients), whichever it was
    built from; the other form is derived on first use.
    """

    def __init__(self, grade: int, support: Optional[Dict[WeylElement, int]] = None) -> None:
        self.grade = grade
        self._support: Optional[Dict[WeylElement, int]] = {w: c for w, c in (support or {}).items() if c}
        self._matrices: Optional[np.ndarray] = None
        self._coefficients: Optional[np.ndarray] = None

    @classmethod
    def from_arrays(cls, grade: int, matrices: np.ndarray, coefficients: np.ndarray) -> "ChowVector":
        """
        Wrap a packed product. Every coefficient must be positive.
        """
        vector = cls(grade)
        vector._support = None
        vector._matrices = np.ascontiguousarray(matrices, dtype=np.int8)
        vector._coefficients = coefficients
        return vector

    @property
    def support(self) -> Dict[WeylElement, int]:
        if self._support is None:
            self._support = {
                WeylElement(matrix, self.grade): int(c) for matrix, c in zip(self._matrices, self._coefficients)
            }
        return self._support

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Packed form: the action matrices of the support and their coefficients, row by row.
        """
        if self._matrices is None:
            elements = list(self._support)
            if elements:
                self._matrices = np.stack([w.matrix for w in elements])
            else:
                self._matrices = np.zeros((0, 0, 0), dtype=np.int8)
            self._coefficients = coefficient_array([self._support[w] for w in elements])
        return self._matrices, self._coefficients

    def is_zero(self) -> bool:
        return len(self) == 0

    def coefficient(self, w: WeylElement) -> int:
        return self.support.get(w, 0)

    def terms(self) -> List[Tuple[WeylElement, int]]:
        """
        (element, coefficient) pairs in canonical element order.
        """
        return sorted(self.support.items(), key=lambda term: term[0].sort_key())

    def min_nonzero_coefficient(self) -> Optional[int]:
        if self.is_zero():
            return None
        if self._support is not None:
            return min(self._support.values())
        return int(self._coefficients.min())

    def ones(self) -> int:
        """
        Number of terms with coefficient exactly 1.
        """
        if self._support is not None:
            return sum(1 for c in self._support.values() if c == 1)
        return int(np.count_nonzero(self._coefficients == 1))

    def is_multiplicity_free(self) -> Tuple[bool, Optional[WeylElement]]:
        """
        Whether some coefficient equals 1, with the smallest such element as witness.
        """
        if self._support is not None:
            candidates = [w for w, c in self._support.items() if c == 1]
            if not candidates:
                return False, None
            return True, min(candidates, key=lambda w: w.sort_key())

        candidates = self._matrices[self._coefficients == 1]
        if not len(candidates):
            return False, None
        # byte order of the int8 matrices, as in WeylElement.sort_key
        flat = candidates.reshape(len(candidates), -1).view(np.uint8)
        first = np.lexsort(flat.T[::-1])[0]
        return True, WeylElement(candidates[first], self.grade)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChowVector):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.grade == other.grade and self.support == other.support

    def __len__(self) -> int:
        if self._support is not None:
            return len(self._support)
        return len(self._coefficients)

    def __repr__(self) -> str:
        return f"ChowVector(grade={self.grade}, terms={len(self)})"

    def __str__(self) -> str:
        return self.__repr__()
