import logging
from collections import deque
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from src.exceptions import NonIntegralCoroot, NotFiniteType, UnknownRoot
from src.rootsys.CartanDatum import CartanDatum
from src.rootsys.CartanTypes import parse_label, standard_root_count
from src.rootsys.Root import Root

logger = logging.getLogger(__name__)

RootLike = Union[Root, Sequence[int]]


class RootSystem:
    """
    RootSystem holds the positive roots of a finite-type Cartan datum, their coroots in
    the simple-coroot basis, and the simple reflections as integer matrices acting on
    simple-root coordinates. Immutable after construction.
    """

    def __init__(
        self,
        datum: CartanDatum,
        positive_roots: List[Root],
        coroot_table: List[Tuple[int, ...]],
    ) -> None:
        self.datum = datum
        self.rank = datum.rank
        self.positive_roots = positive_roots
        self.coroot_table = coroot_table
        self.index: Dict[Tuple[int, ...], int] = {root.coords: n for n, root in enumerate(positive_roots)}

        r = self.rank
        self.simple_reflections: List[np.ndarray] = []
        for i in range(r):
            matrix = np.identity(r, dtype=np.int32)
            for j in range(r):
                matrix[i, j] -= datum.matrix[i][j]
            matrix.flags.writeable = False
            self.simple_reflections.append(matrix)

        # columns are the positive roots
        self.root_matrix = np.array([root.coords for root in positive_roots], dtype=np.int32).T
        self.root_matrix.flags.writeable = False
        self.coroot_matrix = np.array(coroot_table, dtype=np.int64)
        self.coroot_matrix.flags.writeable = False

        self.highest_root = positive_roots[-1]
        self.entry_bound = int(self.root_matrix.max())

    @property
    def dim_flag(self) -> int:
        """
        dim(G/B), the number of positive roots.
        """
        return len(self.positive_roots)

    @property
    def label(self) -> str:
        return self.datum.label or "custom"

    def root_index(self, alpha: RootLike) -> int:
        coords = alpha.coords if isinstance(alpha, Root) else tuple(int(x) for x in alpha)
        try:
            return self.index[coords]
        except KeyError:
            raise UnknownRoot(f"{coords} is not a positive root of {self.label}") from None

    def coroot_expansion(self, alpha: RootLike) -> Tuple[int, ...]:
        """
        Coefficients k with alpha^vee = sum_j k_j alpha_j^vee.

        Raises:
            UnknownRoot: alpha is not a positive root.
        """
        return self.coroot_table[self.root_index(alpha)]

    def chevalley_coefficient(self, i: int, alpha: RootLike) -> int:
        """
        <omega_i, alpha^vee>, the structure constant of [D_i] in the Chevalley rule (0-based i).
        """
        return self.coroot_expansion(alpha)[i]

    def pairing(self, beta: RootLike, alpha: RootLike) -> int:
        """
        <beta, alpha^vee> for any root-lattice vector beta and positive root alpha.
        """
        coords = beta.coords if isinstance(beta, Root) else tuple(beta)
        k = self.coroot_expansion(alpha)
        c = self.datum.matrix
        return sum(k[i] * c[i][j] * coords[j] for i in range(self.rank) for j in range(self.rank))

    def exponents(self) -> List[int]:
        """
        Exponents of the Weyl group, read off the height distribution of the positive
        roots: the number of exponents equal to k is #(height k) - #(height k+1).
        """
        heights: Dict[int, int] = {}
        for root in self.positive_roots:
            heights[root.height] = heights.get(root.height, 0) + 1
        result = []
        for k in range(1, self.highest_root.height + 1):
            result.extend([k] * (heights.get(k, 0) - heights.get(k + 1, 0)))
        return result

    def degrees(self) -> List[int]:
        return [e + 1 for e in self.exponents()]

    def weyl_order(self) -> int:
        order = 1
        for d in self.degrees():
            order *= d
        return order

    def poincare_coefficients(self) -> List[int]:
        """
        Coefficients of the Poincare polynomial sum_w q^l(w), product of [d]_q over degrees.
        """
        poly = np.array([1], dtype=np.int64)
        for d in self.degrees():
            poly = np.convolve(poly, np.ones(d, dtype=np.int64))
        return [int(x) for x in poly]

    def __repr__(self) -> str:
        return f"RootSystem(label={self.label}, rank={self.rank}, positive_roots={len(self.positive_roots)})"

    def __str__(self) -> str:
        return self.__repr__()


def build_root_system(datum: CartanDatum) -> RootSystem:
    """
    Close the simple roots under the simple reflections, keep the positive ones, and
    compute every coroot.

    Args:
        datum (CartanDatum): validated finite-type datum

    Returns:
        RootSystem: roots ordered by (height, coordinates)

    Raises:
        NotFiniteType: the closure exceeds the largest positive-root count of the rank
        NonIntegralCoroot: a coroot coefficient is not an integer
    """
    r = datum.rank
    c = datum.matrix
    ceiling = max(r * r, 120)

    simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(r):
            pairing = sum(beta[j] * c[i][j] for j in range(r))
            if pairing == 0:
                continue
            image = list(beta)
            image[i] -= pairing
            image = tuple(image)
            if min(image) < 0 or image in seen:
                continue
            seen.add(image)
            if len(seen) > ceiling:
                raise NotFiniteType(f"root closure exceeded {ceiling} positive roots")
            queue.append(image)

    roots = sorted(Root(coords) for coords in seen)

    if datum.label is not None:
        family, rank = parse_label(datum.label)
        expected = standard_root_count(family, rank)
        if len(roots) != expected:
            raise NotFiniteType(f"{datum.label} closure produced {len(roots)} positive roots, expected {expected}")

    d = datum.symmetrizer
    coroots = []
    for root in roots:
        m = root.coords
        norm = sum(m[i] * m[j] * d[i] * c[i][j] for i in range(r) for j in range(r))
        k = []
        for j in range(r):
            numerator = 2 * m[j] * d[j]
            if numerator % norm != 0:
                raise NonIntegralCoroot(f"coroot of {m} has coefficient {numerator}/{norm} at node {j + 1}")
            k.append(numerator // norm)
        coroots.append(tuple(k))

    logger.debug("built %s: %d positive roots", datum.label, len(roots))
    return RootSystem(datum, roots, coroots)
