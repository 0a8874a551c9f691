import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.rootsys.RootSystem import RootLike, RootSystem
from src.weyl.WeylElement import WeylElement

logger = logging.getLogger(__name__)

Cover = Tuple[int, WeylElement]
CoverBatch = Tuple[np.ndarray, np.ndarray, np.ndarray]


class WeylGroup:
    """
    Arithmetic in the Weyl group of a root system, with elements kept as integer
    action matrices. Stateless apart from tables derived from the root system, so one
    instance can be shared freely.
    """

    def __init__(self, rs: RootSystem) -> None:
        self.rs = rs
        r = rs.rank
        self._roots = rs.root_matrix
        self._root_columns = np.ascontiguousarray(rs.root_matrix.T)
        self._roots_float = rs.root_matrix.astype(np.float32)
        self._all_roots = np.arange(rs.dim_flag)
        self._identity = np.identity(r, dtype=np.int32)

        # s_alpha = I - alpha (x) (k^T C): column j is alpha_j - <alpha_j, alpha^vee> alpha
        c = np.array(rs.datum.matrix, dtype=np.int64)
        self._pairings = (rs.coroot_matrix @ c).astype(np.int32)
        self._reflections = self._identity[None] - self._root_columns[:, :, None] * self._pairings[:, None, :]
        self._reflections.flags.writeable = False

        # N(s_alpha) per root, and half of l(s_alpha) - 1
        flipped = ((self._reflections @ self._roots) < 0).any(axis=1)
        self._reflection_inversions = flipped.astype(np.float32)
        self._half = ((flipped.sum(axis=1) - 1) // 2).astype(np.float32)

        # a regular dominant vector v: 2 rho, or rho when it lies in the root lattice
        regular = self._roots.sum(axis=1).astype(np.int64)
        if not (regular % 2).any():
            regular //= 2
        self._regular = regular
        self._regular_pairing = self._pairings.astype(np.int64) @ regular
        radix = [2 * int(x) + 1 for x in regular]
        self._multipliers: Optional[np.ndarray] = None
        if int(np.prod(radix, dtype=object)) < 1 << 63:
            self._multipliers = np.array([int(np.prod(radix[:j], dtype=object)) for j in range(r)], dtype=np.int64)

    @property
    def rank(self) -> int:
        return self.rs.rank

    def identity(self) -> WeylElement:
        return WeylElement(self._identity, 0)

    def generator(self, i: int) -> WeylElement:
        """
        The simple reflection s_i (0-based i).
        """
        return WeylElement(self.rs.simple_reflections[i], 1)

    def compose(self, u: WeylElement, w: WeylElement) -> WeylElement:
        """
        u o w, the product of action matrices.
        """
        product = u.matrix.astype(np.int32) @ w.matrix.astype(np.int32)
        self._check_entries(product)
        return WeylElement(product)

    def length(self, w: WeylElement) -> int:
        """
        Number of positive roots sent to negative roots.
        """
        if w.length is None:
            images = w.matrix.astype(np.int32) @ self._roots
            w.length = int((images < 0).any(axis=0).sum())
        return w.length

    def reflection(self, alpha: RootLike) -> WeylElement:
        """
        The reflection s_alpha of a positive root.

        Raises:
            UnknownRoot: alpha is not a positive root.
        """
        element = WeylElement(self._reflections[self.rs.root_index(alpha)])
        self.length(element)
        return element

    def chevalley_covers(self, w: WeylElement) -> List[Cover]:
        """
        Every positive root alpha with l(w s_alpha) = l(w) + 1, paired with w s_alpha,
        in root order. These are exactly the terms of the Chevalley rule for [Z_w].

        Args:
            w (WeylElement): element whose covers are wanted

        Returns:
            List[Cover]: (root index, w s_alpha) pairs
        """
        target = self.length(w) + 1
        stack = w.matrix[None]
        rows, alphas, _ = self.batch_covers(stack)
        products = self.cover_matrices(stack[rows], alphas)
        return [(int(n), WeylElement(p, target)) for n, p in zip(alphas, products)]

    def batch_covers(self, matrices: np.ndarray, roots: Optional[np.ndarray] = None) -> CoverBatch:
        """
        Chevalley covers of a whole stack of elements at once.

        l(w s_alpha) = l(w) + l(s_alpha) - 2 |N(w) & N(s_alpha)| for the inversion sets N,
        so w s_alpha covers w exactly when the two sets share (l(s_alpha) - 1) / 2 roots.

        Args:
            matrices (np.ndarray): (m, r, r) action matrices
            roots (Optional[np.ndarray]): positive-root indices to try, all of them by default

        Returns:
            CoverBatch: for every cover, the row of w in `matrices`, the root index of alpha
            and the element key of w s_alpha, ordered by row and then root
        """
        subset = self._all_roots if roots is None else roots
        images = self._images(matrices)
        inverted = (images < 0).any(axis=1).astype(np.float32)
        shared = inverted @ self._reflection_inversions[subset].T
        rows, cols = np.nonzero(shared == self._half[subset])
        alphas = subset[cols]

        # w s_alpha (v) = w(v) - <v, alpha^vee> w(alpha)
        moved = images[rows, :, alphas].astype(np.int64)
        base = matrices.astype(np.int64) @ self._regular
        return rows, alphas, self.encode(base[rows] - self._regular_pairing[alphas, None] * moved)

    def cover_matrices(self, matrices: np.ndarray, alphas: np.ndarray) -> np.ndarray:
        """
        w s_alpha for each row w of `matrices` paired with a root index in `alphas`.
        """
        w = matrices.astype(np.int32)
        moved = np.einsum("mij,mj->mi", w, self._root_columns[alphas])
        products = w - moved[:, :, None] * self._pairings[alphas][:, None, :]
        self._check_entries(products)
        return products.astype(np.int8)

    def element_keys(self, matrices: np.ndarray) -> np.ndarray:
        return self.encode(matrices.astype(np.int64) @ self._regular)

    def encode(self, regular: np.ndarray) -> np.ndarray:
        """
        Sortable keys for elements given their images w(v) of the fixed regular vector v,
        which determine w. The images are packed into one int64 by mixed radix when every
        coordinate range fits, and kept as int32 rows otherwise.
        """
        if self._multipliers is not None:
            return (regular + self._regular) @ self._multipliers
        return regular.astype(np.int32)

    def has_right_descent(self, w: WeylElement, i: int) -> bool:
        """
        True iff l(w s_i) < l(w), i.e. w(alpha_i) is negative.
        """
        return bool((w.matrix[:, i] < 0).any())

    def longest_element(self) -> WeylElement:
        """
        w_0, found greedily by multiplying with any simple reflection that raises length.
        """
        w = self.identity()
        while True:
            ascent = next((i for i in range(self.rank) if not self.has_right_descent(w, i)), None)
            if ascent is None:
                break
            w = WeylElement(w.matrix.astype(np.int32) @ self.rs.simple_reflections[ascent], w.length + 1)
        return w

    def reduced_word(self, w: WeylElement) -> List[int]:
        """
        Reduced word of w (1-based generator indices), peeling off the smallest right
        descent at each step.
        """
        word: List[int] = []
        current = w.matrix.astype(np.int32)
        while True:
            descent = next((i for i in range(self.rank) if (current[:, i] < 0).any()), None)
            if descent is None:
                break
            current = current @ self.rs.simple_reflections[descent]
            word.append(descent + 1)
        word.reverse()
        return word

    def word_string(self, w: WeylElement) -> str:
        return " ".join(str(i) for i in self.reduced_word(w))

    def from_word(self, word: Sequence[int]) -> WeylElement:
        """
        Element s_{word[0]} ... s_{word[-1]} from 1-based generator indices.
        """
        current = self._identity.copy()
        for i in word:
            current = current @ self.rs.simple_reflections[int(i) - 1]
        element = WeylElement(current)
        self.length(element)
        return element

    def elements_by_length(self) -> List[List[WeylElement]]:
        """
        All of W, layer k holding the elements of length k. Only sensible at small rank.
        """
        layers = [[self.identity()]]
        while True:
            seen: Dict[bytes, WeylElement] = {}
            for w in layers[-1]:
                for i in range(self.rank):
                    if self.has_right_descent(w, i):
                        continue
                    up = WeylElement(w.matrix.astype(np.int32) @ self.rs.simple_reflections[i], w.length + 1)
                    seen.setdefault(up.key, up)
            if not seen:
                break
            layers.append(sorted(seen.values()))
        return layers

    def _images(self, matrices: np.ndarray) -> np.ndarray:
        # exact in float32: entries stay far below 2**24
        m, r = len(matrices), self.rank
        flat = matrices.reshape(m * r, r).astype(np.float32)
        return (flat @ self._roots_float).reshape(m, r, self.rs.dim_flag)

    def _check_entries(self, matrices: np.ndarray) -> None:
        # entries are root coordinates, bounded by the largest coordinate of any positive root
        if matrices.size:
            assert int(np.abs(matrices).max()) <= self.rs.entry_bound, "Weyl matrix entry out of range"
