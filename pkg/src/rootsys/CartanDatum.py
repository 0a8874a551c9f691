from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

import sympy

from src.exceptions import InvalidCartanDatum, NotFiniteType
from src.rootsys.CartanTypes import cartan_matrix, parse_label


class CartanDatum:
    """
    CartanDatum is a finite-type Cartan matrix together with its minimal symmetrizer.

    Convention: matrix[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i),
    so the simple reflection acts by s_i(alpha_j) = alpha_j - matrix[i][j] alpha_i.
    Indices are 0-based internally; everything printed for humans is 1-based.
    """

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        symmetrizer: Optional[Sequence[int]] = None,
        label: Optional[str] = None,
    ) -> None:
        self.matrix: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in matrix)
        self.rank = len(self.matrix)
        self.label = label

        self._check_shape()
        self._check_entries()

        if symmetrizer is None:
            self.symmetrizer = minimal_symmetrizer(self.matrix)
        else:
            self.symmetrizer = tuple(int(x) for x in symmetrizer)
            self._check_symmetrizer()

        self._check_positive_definite()
        self._check_label()

    def symmetrized(self) -> List[List[int]]:
        """
        The Gram matrix (alpha_i, alpha_j) = d_i * C_ij of the simple roots.
        """
        return [[self.symmetrizer[i] * self.matrix[i][j] for j in range(self.rank)] for i in range(self.rank)]

    def _check_shape(self) -> None:
        if self.rank == 0:
            raise InvalidCartanDatum("Cartan matrix must have positive rank")
        for row in self.matrix:
            if len(row) != self.rank:
                raise InvalidCartanDatum(f"Cartan matrix is not square: row of length {len(row)} in rank {self.rank}")

    def _check_entries(self) -> None:
        for i in range(self.rank):
            if self.matrix[i][i] != 2:
                raise InvalidCartanDatum(f"diagonal entry C[{i + 1}][{i + 1}] = {self.matrix[i][i]}, expected 2")
            for j in range(self.rank):
                if i == j:
                    continue
                if self.matrix[i][j] > 0:
                    raise InvalidCartanDatum(f"off-diagonal entry C[{i + 1}][{j + 1}] = {self.matrix[i][j]} is positive")
                if (self.matrix[i][j] == 0) != (self.matrix[j][i] == 0):
                    raise InvalidCartanDatum(f"C[{i + 1}][{j + 1}] and C[{j + 1}][{i + 1}] must vanish together")

    def _check_symmetrizer(self) -> None:
        if len(self.symmetrizer) != self.rank or any(d <= 0 for d in self.symmetrizer):
            raise InvalidCartanDatum(f"symmetrizer {self.symmetrizer} must have {self.rank} positive entries")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.symmetrizer[i] * self.matrix[i][j] != self.symmetrizer[j] * self.matrix[j][i]:
                    raise InvalidCartanDatum(f"symmetrizer {self.symmetrizer} does not symmetrize the matrix")

    def _check_positive_definite(self) -> None:
        if not sympy.Matrix(self.symmetrized()).is_positive_definite:
            raise NotFiniteType("symmetrized Cartan matrix is not positive definite")

    def _check_label(self) -> None:
        if self.label is None:
            return
        family, rank = parse_label(self.label)
        standard = tuple(tuple(row) for row in cartan_matrix(family, rank))
        if standard != self.matrix:
            raise InvalidCartanDatum(f"matrix is not the standard Cartan matrix of {self.label}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CartanDatum):
            return NotImplemented
        return self.matrix == other.matrix and self.symmetrizer == other.symmetrizer

    def __hash__(self) -> int:
        return hash((self.matrix, self.symmetrizer))

    def __repr__(self) -> str:
        return f"CartanDatum(label={self.label}, rank={self.rank}, matrix={self.matrix}, symmetrizer={self.symmetrizer})"

    def __str__(self) -> str:
        return f"CartanDatum(label={self.label}, rank={self.rank})"


def minimal_symmetrizer(matrix: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Smallest positive integers d with d_i * C_ij = d_j * C_ji, normalized per connected
    component of the Dynkin diagram.

    Raises:
        InvalidCartanDatum: the matrix is not symmetrizable.
    """
    rank = len(matrix)
    ratio: List[Optional[Fraction]] = [None] * rank
    result = [0] * rank

    for start in range(rank):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        component = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(rank):
                if i == j or matrix[i][j] == 0:
                    continue
                wanted = ratio[i] * matrix[i][j] / matrix[j][i]
                if ratio[j] is None:
                    ratio[j] = wanted
                    component.append(j)
                    stack.append(j)
                elif ratio[j] != wanted:
                    raise InvalidCartanDatum("Cartan matrix is not symmetrizable")

        scale = lcm(*(ratio[i].denominator for i in component))
        values = [int(ratio[i] * scale) for i in component]
        common = gcd(*values)
        for i, value in zip(component, values):
            result[i] = value // common

    return tuple(result)
