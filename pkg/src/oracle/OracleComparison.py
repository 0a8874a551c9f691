import logging
from typing import Dict, List, Tuple

import numpy as np

from src.chow.ChowRing import ChowRing
from src.chow.ChowVector import ChowVector
from src.chow.MultiDegree import MultiDegree
from src.oracle.DenseChowTable import DenseChowTable, oracle_product
from src.rootsys.RootSystem import RootSystem, build_root_system
from src.rootsys.labeled.LabeledCartanLoader import LabeledCartanLoader
from src.weyl.WeylElement import WeylElement

logger = logging.getLogger(__name__)

SELFTEST_LABELS = ["A2", "A3", "B2", "B3", "G2", "D4"]

# general Schubert products are checked pairwise only on groups this small
PAIRWISE_PRODUCT_LIMIT = 48


class ComparisonReport:
    """
    Outcome of checking the engine against the dense oracle for one type.
    Mismatches are collected as readable lines, never raised.
    """

    def __init__(self, label: str) -> None:
        self.label = label
        self.monomials = 0
        self.mismatches: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def add(self, message: str) -> None:
        self.mismatches.append(message)

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.mismatches)} mismatches"
        return f"{self.label}: {self.monomials} monomials compared, {status}"

    def __repr__(self) -> str:
        return f"ComparisonReport(label={self.label}, monomials={self.monomials}, mismatches={len(self.mismatches)})"

    def __str__(self) -> str:
        return self.summary()


def compare_all(label: str) -> ComparisonReport:
    """
    Compare the engine with the oracle on every divisor monomial of total degree at most
    dim(G/B), then run the structural checks (group order, dual length algorithms,
    Poincare counts, point-class duality and, on small groups, general products).

    Raises:
        RankTooLarge: the type has rank above 4
    """
    rs = build_root_system(LabeledCartanLoader(label).load())
    table = DenseChowTable(rs)
    ring = ChowRing(rs)
    report = ComparisonReport(rs.label)

    _check_group(rs, table, report)
    _check_monomials(ring, table, report)
    if table.order <= PAIRWISE_PRODUCT_LIMIT:
        _check_schubert_products(table, report)

    logger.info("%s", report.summary())
    return report


def to_dense(table: DenseChowTable, v: ChowVector, positions: Dict[bytes, int]) -> np.ndarray:
    dense = np.zeros(table.order, dtype=np.int64)
    for w, c in v.support.items():
        dense[oracle_position(table, w, positions)] = c
    return dense


def oracle_position(table: DenseChowTable, w: WeylElement, positions: Dict[bytes, int]) -> int:
    if w.key not in positions:
        positions[w.key] = table.index_of_simple_images(w.matrix.T)
    return positions[w.key]


def _check_group(rs: RootSystem, table: DenseChowTable, report: ComparisonReport) -> None:
    if table.order != rs.weyl_order():
        report.add(f"|W| = {table.order} by enumeration, {rs.weyl_order()} from the degrees")

    for index in range(table.order):
        if table.inversions(index) != table.depth[index]:
            report.add(f"element {table.word(index)}: BFS depth {table.depth[index]}, {table.inversions(index)} inversions")

    counts = [len(table.grades[d]) for d in range(max(table.depth) + 1)]
    if counts != rs.poincare_coefficients():
        report.add(f"elements per length {counts}, Poincare coefficients {rs.poincare_coefficients()}")


def _monomials(rank: int, limit: int) -> List[MultiDegree]:
    """
    Every multidegree of total at most `limit`, each listed after its parent (the
    multidegree with one exponent dropped from its last nonzero index).
    """
    found = [MultiDegree.zero(rank)]
    frontier = [found[0]]
    for _ in range(limit):
        layer = []
        for deg in frontier:
            for i in range(max(deg.last_index(), 0), rank):
                layer.append(deg.raised(i))
        found.extend(layer)
        frontier = layer
    return found


def _parent(deg: MultiDegree) -> Tuple[MultiDegree, int]:
    last = deg.last_index()
    n = list(deg.n)
    n[last] -= 1
    return MultiDegree(n), last


def _check_monomials(ring: ChowRing, table: DenseChowTable, report: ComparisonReport) -> None:
    positions: Dict[bytes, int] = {}
    engine: Dict[MultiDegree, ChowVector] = {}
    dense: Dict[MultiDegree, np.ndarray] = {}
    pairing: Dict[MultiDegree, np.ndarray] = {}
    top = table.basis_vector(table.top)

    for deg in _monomials(table.rank, table.dim_flag):
        if deg.total == 0:
            engine[deg] = ring.unit()
            dense[deg] = oracle_product(table, deg)
            pairing[deg] = top
        else:
            parent, i = _parent(deg)
            engine[deg] = ring.multiply_by_divisor(engine[parent], i)
            dense[deg] = table.apply(i, dense[parent])
            # row w0 of the operator of deg: entry y is deg(P [Z_y])
            pairing[deg] = pairing[parent] @ table.divisors[i]
        report.monomials += 1

        expected = dense[deg]
        got = to_dense(table, engine[deg], positions)
        if not np.array_equal(expected, got):
            diff = np.nonzero(expected != got)[0]
            for index in diff[:5]:
                report.add(
                    f"{deg}: coefficient at {table.word(index)} is {got[index]} in the engine, {expected[index]} in the oracle"
                )
            continue

        for index in np.nonzero(expected)[0]:
            if table.depth[index] != deg.total:
                report.add(f"{deg}: term {table.word(index)} has the wrong codimension")
            if pairing[deg][table.dual(index)] != expected[index]:
                report.add(
                    f"{deg}: deg(P [Z_w0 v]) = {pairing[deg][table.dual(index)]} but the coefficient of "
                    f"{table.word(index)} is {expected[index]}"
                )


def _check_schubert_products(table: DenseChowTable, report: ComparisonReport) -> None:
    top = table.dim_flag
    for u in range(table.order):
        for v in range(u, table.order):
            product = table.schubert_product(u, v)
            if (product < 0).any():
                report.add(f"[Z_{table.word(u)}][Z_{table.word(v)}] has a negative coefficient")
            if table.depth[u] + table.depth[v] == top:
                expected = table.basis_vector(table.top) if v == table.dual(u) else np.zeros(table.order, dtype=np.int64)
                if not np.array_equal(product, expected):
                    report.add(f"[Z_{table.word(u)}][Z_{table.word(v)}] breaks point-class duality")
            elif table.depth[u] + table.depth[v] < top and u != v:
                if not np.array_equal(product, table.schubert_product(v, u)):
                    report.add(f"[Z_{table.word(u)}][Z_{table.word(v)}] is not commutative")
