import functools
import logging
from typing import List, Optional, Tuple

import numpy as np

from src.chow.ChowVector import WIDE_COEFFICIENT, ChowVector
from src.chow.CoefficientBackendInterface import CoefficientBackendInterface
from src.chow.MultiDegree import MultiDegree
from src.chow.backends.ArbitraryPrecisionBackend import ArbitraryPrecisionBackend
from src.config.Settings import Settings
from src.exceptions import WrongGrade
from src.rootsys.RootSystem import RootSystem
from src.weyl.WeylElement import WeylElement
from src.weyl.WeylGroup import CoverBatch, WeylGroup

logger = logging.getLogger(__name__)

# supports up to this size go element by element through the cover cache
SMALL_SUPPORT = 64
CHUNK_ROWS = 1 << 14
MERGE_FLOOR = 1 << 20

Terms = Tuple[np.ndarray, np.ndarray, np.ndarray]


def aggregate(keys: np.ndarray, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Sum the values that share a key.

    Args:
        keys (np.ndarray): int64 keys, or rows of int32 keys
        values (np.ndarray): one value per key

    Returns:
        Tuple[np.ndarray, np.ndarray, np.ndarray]: distinct keys in sorted order, their
        sums, and the position of one occurrence of each
    """
    if len(keys) == 0:
        return keys, values, np.zeros(0, dtype=np.intp)
    order = np.argsort(keys, kind="stable") if keys.ndim == 1 else np.lexsort(keys.T[::-1])
    ordered = keys[order]
    change = ordered[1:] != ordered[:-1]
    if change.ndim > 1:
        change = change.any(axis=1)
    starts = np.flatnonzero(np.concatenate(([True], change)))
    return ordered[starts], np.add.reduceat(values[order], starts), order[starts]


class ChowRing:
    """
    Sparse exact arithmetic in the Schubert basis of CH(G/B), with codim Z_w = l(w).

    Divisor multiplication follows the Chevalley rule
        [D_i] [Z_w] = sum over alpha > 0 with l(w s_alpha) = l(w) + 1 of <omega_i, alpha^vee> [Z_{w s_alpha}].
    Small supports are expanded element by element from a bounded LRU cache of covers
    owned by the ring; larger ones are expanded in chunks of packed matrices and the
    terms merged by element key.
    """

    def __init__(
        self,
        rs: RootSystem,
        backend: Optional[CoefficientBackendInterface] = None,
        cover_cache_size: Optional[int] = None,
        group: Optional[WeylGroup] = None,
        small_support: int = SMALL_SUPPORT,
    ) -> None:
        self.rs = rs
        self.group = group or WeylGroup(rs)
        self.backend = backend or ArbitraryPrecisionBackend()
        if cover_cache_size is None:
            cover_cache_size = Settings.from_env().cover_cache_size
        self.small_support = small_support
        self._covers = functools.lru_cache(maxsize=cover_cache_size)(self._element_covers)
        self._top: Optional[WeylElement] = None

        weights = rs.coroot_matrix
        self._weights = [np.ascontiguousarray(weights[:, i]) for i in range(rs.rank)]
        self._roots_for = [np.flatnonzero(weights[:, i]) for i in range(rs.rank)]
        self._fan_in = rs.dim_flag * int(weights.max())

    @property
    def dim_flag(self) -> int:
        return self.rs.dim_flag

    @property
    def top_element(self) -> WeylElement:
        if self._top is None:
            self._top = self.group.longest_element()
        return self._top

    def unit(self) -> ChowVector:
        """
        The fundamental class [Z_e] = [G/B].
        """
        return ChowVector(0, {self.group.identity(): 1})

    def schubert_class(self, w: WeylElement) -> ChowVector:
        return ChowVector(self.group.length(w), {w: 1})

    def divisor(self, i: int) -> ChowVector:
        return self.multiply_by_divisor(self.unit(), i)

    def multiply_by_divisor(self, v: ChowVector, i: int) -> ChowVector:
        """
        [D_i] * v via the Chevalley rule (0-based i).

        Args:
            v (ChowVector): class to multiply
            i (int): simple index

        Returns:
            ChowVector: product of grade v.grade + 1; zero once the grade passes dim(G/B)

        Raises:
            CoefficientOverflow: the checked backend rejected a coefficient
        """
        grade = v.grade + 1
        if v.is_zero() or grade > self.dim_flag:
            return ChowVector(grade)

        matrices, coefficients = v.arrays()
        weights = self._weights[i]
        if coefficients.dtype == object or int(coefficients.max()) * self._fan_in >= WIDE_COEFFICIENT:
            coefficients = coefficients.astype(object)
            weights = weights.astype(object)

        if len(matrices) <= self.small_support:
            keys, values, products = self._cached_terms(matrices, coefficients, weights)
        else:
            keys, values, products = self._batched_terms(matrices, coefficients, weights, i)
        self.backend.check_all(values)
        return ChowVector.from_arrays(grade, products, values)

    def product_of_divisors(self, deg: MultiDegree) -> ChowVector:
        """
        Schubert expansion of [D_1]^n_1 ... [D_r]^n_r, multiplied in ascending index order.
        """
        if deg.total > self.dim_flag:
            return ChowVector(deg.total)
        v = self.unit()
        for i, exponent in enumerate(deg.n):
            for _ in range(exponent):
                v = self.multiply_by_divisor(v, i)
                if v.is_zero():
                    return ChowVector(deg.total)
        return v

    def is_multiplicity_free(self, v: ChowVector) -> Tuple[bool, Optional[WeylElement]]:
        return v.is_multiplicity_free()

    def min_nonzero_coefficient(self, v: ChowVector) -> Optional[int]:
        return v.min_nonzero_coefficient()

    def point_degree(self, v: ChowVector) -> int:
        """
        Degree of a zero-cycle class: its coefficient at [Z_{w_0}] = [pt].

        Raises:
            WrongGrade: v is a nonzero class of codimension other than dim(G/B)
        """
        if v.is_zero():
            return 0
        if v.grade != self.dim_flag:
            raise WrongGrade(f"degree needs codimension {self.dim_flag}, class has codimension {v.grade}")
        return v.coefficient(self.top_element)

    def cache_info(self):
        return self._covers.cache_info()

    def _cached_terms(self, matrices: np.ndarray, coefficients: np.ndarray, weights: np.ndarray) -> Terms:
        keys: List[np.ndarray] = []
        values: List[np.ndarray] = []
        products: List[np.ndarray] = []
        for matrix, c in zip(matrices, coefficients):
            alphas, up_keys, ups = self._covers(matrix.tobytes())
            k = weights[alphas]
            hit = k != 0
            keys.append(up_keys[hit])
            values.append(c * k[hit])
            products.append(ups[hit])
        summed_keys, summed, first = aggregate(np.concatenate(keys), np.concatenate(values))
        return summed_keys, summed, np.concatenate(products)[first]

    def _batched_terms(self, matrices: np.ndarray, coefficients: np.ndarray, weights: np.ndarray, i: int) -> Terms:
        roots = self._roots_for[i]
        pending: List[Terms] = []
        held = 0
        limit = max(MERGE_FLOOR, 2 * len(matrices))
        for start in range(0, len(matrices), CHUNK_ROWS):
            rows, alphas, keys = self.group.batch_covers(matrices[start:start + CHUNK_ROWS], roots)
            keys, values, first = aggregate(keys, coefficients[start + rows] * weights[alphas])
            pending.append((keys, values, np.stack((rows[first] + start, alphas[first]), axis=1)))
            held += len(keys)
            if held > limit:
                pending = [self._merge(pending)]
                held = len(pending[0][0])
                limit = max(limit, 2 * held)

        keys, values, sources = self._merge(pending)
        logger.debug("batched product: %d terms from %d, %d distinct", held, len(matrices), len(keys))
        return keys, values, self.group.cover_matrices(matrices[sources[:, 0]], sources[:, 1])

    @staticmethod
    def _merge(pending: List[Terms]) -> Terms:
        keys, values, first = aggregate(
            np.concatenate([p[0] for p in pending]),
            np.concatenate([p[1] for p in pending]),
        )
        return keys, values, np.concatenate([p[2] for p in pending])[first]

    def _element_covers(self, key: bytes) -> CoverBatch:
        """
        Root indices, element keys and action matrices of the covers of one element.
        """
        r = self.rs.rank
        matrix = np.frombuffer(key, dtype=np.int8).reshape(1, r, r)
        rows, alphas, keys = self.group.batch_covers(matrix)
        ups = self.group.cover_matrices(matrix[rows], alphas)
        for part in (alphas, keys, ups):
            part.flags.writeable = False
        return alphas, keys, ups
