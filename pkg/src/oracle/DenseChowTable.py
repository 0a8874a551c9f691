import logging
from collections import deque
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from src.chow.MultiDegree import MultiDegree
from src.exceptions import CoefficientOverflow, RankTooLarge, SchubertError
from src.rootsys.RootSystem import RootSystem

logger = logging.getLogger(__name__)

MAX_ORACLE_RANK = 4
OVERFLOW_GUARD = 2 ** 62

Permutation = Tuple[int, ...]


class DenseChowTable:
    """
    Brute-force model of CH(G/B) for small rank, built without the sparse engine.

    Weyl elements are permutations of the full root list (positive roots, then their
    negatives), enumerated breadth-first from the identity over the Cayley graph of the
    simple reflections; the BFS depth is the length. Each divisor [D_i] is a dense
    |W| x |W| integer matrix acting on coefficient vectors.
    """

    def __init__(self, rs: RootSystem) -> None:
        if rs.rank > MAX_ORACLE_RANK:
            raise RankTooLarge(f"the dense oracle handles rank <= {MAX_ORACLE_RANK}, {rs.label} has rank {rs.rank}")
        self.rs = rs
        self.rank = rs.rank
        positive = [root.coords for root in rs.positive_roots]
        self.n_positive = len(positive)
        self.roots: List[Tuple[int, ...]] = positive + [tuple(-x for x in coords) for coords in positive]
        self.root_index: Dict[Tuple[int, ...], int] = {coords: n for n, coords in enumerate(self.roots)}

        self.generators = [self._root_permutation(self._simple_pairings(i), i) for i in range(self.rank)]
        self._enumerate()
        self.top = self.depth.index(max(self.depth))
        self.reflections = [self._reflection(n) for n in range(self.n_positive)]
        self.divisors = [self._divisor_table(i) for i in range(self.rank)]
        self._grade_bases: Dict[int, Tuple[List[MultiDegree], sympy.Matrix]] = {}
        logger.debug("dense table for %s: %d elements", rs.label, len(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim_flag(self) -> int:
        return self.n_positive

    def compose(self, u: Permutation, w: Permutation) -> Permutation:
        return tuple(u[k] for k in w)

    def inversions(self, index: int) -> int:
        """
        Positive roots sent to negative roots, counted on the permutation.
        """
        p = self.elements[index]
        return sum(1 for k in range(self.n_positive) if p[k] >= self.n_positive)

    def index_of_simple_images(self, images: Sequence[Sequence[int]]) -> int:
        """
        Element index from w(alpha_1), ..., w(alpha_r) in simple-root coordinates.
        """
        return self.by_simple_images[tuple(tuple(int(x) for x in image) for image in images)]

    def word(self, index: int) -> List[int]:
        """
        A reduced word (1-based) read off the BFS tree.
        """
        letters: List[int] = []
        while self.parent[index] is not None:
            index, letter = self.parent[index]
            letters.append(letter + 1)
        letters.reverse()
        return letters

    def dual(self, index: int) -> int:
        """
        The element w_0 v pairing with v to the point class.
        """
        return self.position[self.compose(self.elements[self.top], self.elements[index])]

    def basis_vector(self, index: int) -> np.ndarray:
        v = np.zeros(self.order, dtype=np.int64)
        v[index] = 1
        return v

    def apply(self, i: int, v: np.ndarray) -> np.ndarray:
        result = self.divisors[i] @ v
        if result.size and int(np.abs(result).max()) >= OVERFLOW_GUARD:
            raise CoefficientOverflow("dense oracle coefficient left the int64 range")
        return result

    def apply_monomial(self, deg: MultiDegree, v: np.ndarray) -> np.ndarray:
        for i, exponent in enumerate(deg.n):
            for _ in range(exponent):
                v = self.apply(i, v)
        return v

    def schubert_product(self, u: int, v: int) -> np.ndarray:
        """
        [Z_u] * [Z_v] as a dense vector. [Z_u] is first written as a rational
        combination of divisor monomials of its grade (these span CH(G/B) over Q), then
        each monomial acts on [Z_v].

        Raises:
            SchubertError: the divisor monomials of this grade do not span it
        """
        grade = self.depth[u]
        monomials, inverse = self._grade_basis(grade)
        row = self.grades[grade].index(u)

        total = [sympy.Integer(0)] * self.order
        for j, monomial in enumerate(monomials):
            weight = inverse[j, row]
            if weight == 0:
                continue
            image = self.apply_monomial(monomial, self.basis_vector(v))
            for k in np.nonzero(image)[0]:
                total[k] += weight * int(image[k])

        if any(not c.is_integer for c in total):
            raise SchubertError(f"product of elements {u} and {v} has a non-integral coefficient")
        return np.array([int(c) for c in total], dtype=np.int64)

    def _simple_pairings(self, i: int) -> List[int]:
        # <beta, alpha_i^vee> for every root beta
        c = self.rs.datum.matrix
        return [sum(beta[j] * c[i][j] for j in range(self.rank)) for beta in self.roots]

    def _root_permutation(self, pairings: List[int], i: int) -> Permutation:
        image = []
        for beta, pairing in zip(self.roots, pairings):
            moved = list(beta)
            moved[i] -= pairing
            image.append(self.root_index[tuple(moved)])
        return tuple(image)

    def _reflection(self, n: int) -> Permutation:
        # s_alpha(beta) = beta - <beta, alpha^vee> alpha
        alpha = self.roots[n]
        k = self.rs.coroot_table[n]
        c = self.rs.datum.matrix
        image = []
        for beta in self.roots:
            pairing = sum(k[j] * c[j][l] * beta[l] for j in range(self.rank) for l in range(self.rank))
            image.append(self.root_index[tuple(b - pairing * a for b, a in zip(beta, alpha))])
        return tuple(image)

    def _enumerate(self) -> None:
        identity = tuple(range(len(self.roots)))
        self.elements: List[Permutation] = [identity]
        self.position: Dict[Permutation, int] = {identity: 0}
        self.depth: List[int] = [0]
        self.parent: List[Optional[Tuple[int, int]]] = [None]

        queue = deque([0])
        while queue:
            index = queue.popleft()
            for i, s in enumerate(self.generators):
                p = self.compose(self.elements[index], s)
                if p in self.position:
                    continue
                self.position[p] = len(self.elements)
                self.elements.append(p)
                self.depth.append(self.depth[index] + 1)
                self.parent.append((index, i))
                queue.append(self.position[p])

        self.grades: Dict[int, List[int]] = {}
        for index, d in enumerate(self.depth):
            self.grades.setdefault(d, []).append(index)

        simple = [self.root_index[tuple(1 if j == i else 0 for j in range(self.rank))] for i in range(self.rank)]
        self.by_simple_images: Dict[Tuple[Tuple[int, ...], ...], int] = {
            tuple(self.roots[p[k]] for k in simple): index for index, p in enumerate(self.elements)
        }

    def _divisor_table(self, i: int) -> np.ndarray:
        table = np.zeros((self.order, self.order), dtype=np.int64)
        for w, p in enumerate(self.elements):
            for n, s in enumerate(self.reflections):
                weight = self.rs.coroot_table[n][i]
                if not weight:
                    continue
                up = self.position[self.compose(p, s)]
                if self.depth[up] == self.depth[w] + 1:
                    table[up, w] += weight
        table.flags.writeable = False
        return table

    def _grade_basis(self, grade: int) -> Tuple[List[MultiDegree], sympy.Matrix]:
        if grade not in self._grade_bases:
            rows = self.grades[grade]
            monomials = [
                MultiDegree(np.bincount(combo, minlength=self.rank)) if grade else MultiDegree.zero(self.rank)
                for combo in combinations_with_replacement(range(self.rank), grade)
            ]
            columns = [self.apply_monomial(m, self.basis_vector(0))[rows] for m in monomials]
            a = sympy.Matrix(len(rows), len(monomials), lambda x, y: int(columns[y][x]))
            _, pivots = a.rref()
            if len(pivots) != len(rows):
                raise SchubertError(f"divisor monomials do not span grade {grade}")
            basis = a.extract(list(range(len(rows))), list(pivots))
            self._grade_bases[grade] = ([monomials[p] for p in pivots], basis.inv())
        return self._grade_bases[grade]


def oracle_product(table: DenseChowTable, deg: MultiDegree) -> np.ndarray:
    """
    Dense expansion of [D_1]^n_1 ... [D_r]^n_r, indexed like `table.elements`.
    """
    return table.apply_monomial(deg, table.basis_vector(0))
