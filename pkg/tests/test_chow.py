import random
from typing import Dict

import pytest

from src.chow.ChowRing import ChowRing
from src.chow.ChowVector import ChowVector
from src.chow.MultiDegree import MultiDegree
from src.chow.ProductExpansion import ProductExpansion
from src.chow.backends import backend_for
from src.chow.backends.CheckedFixedBackend import CheckedFixedBackend
from src.exceptions import CoefficientOverflow, InvalidDegree, WrongGrade
from src.oracle.DenseChowTable import DenseChowTable, oracle_product
from src.weyl.WeylElement import WeylElement


def monomials(rank: int, limit: int):
    layer = [MultiDegree.zero(rank)]
    for _ in range(limit + 1):
        yield from layer
        layer = [deg.raised(i) for deg in layer for i in range(max(deg.last_index(), 0), rank)]


def test_unit(ring):
    a2 = ring("A2")
    unit = a2.unit()
    assert unit.grade == 0
    assert unit.terms() == [(a2.group.identity(), 1)]
    assert a2.is_multiplicity_free(unit) == (True, a2.group.identity())
    assert a2.min_nonzero_coefficient(unit) == 1


@pytest.mark.parametrize("label", ["A2", "B3", "G2", "E6"])
def test_divisor_is_the_simple_schubert_class(ring, label):
    r = ring(label)
    for i in range(r.rs.rank):
        assert r.divisor(i) == r.schubert_class(r.group.generator(i))


def test_a2_products(ring):
    a2 = ring("A2")
    g = a2.group
    d1d1 = a2.multiply_by_divisor(a2.divisor(0), 0)
    assert d1d1 == ChowVector(2, {g.from_word([2, 1]): 1})

    d1d2 = a2.multiply_by_divisor(a2.divisor(0), 1)
    assert d1d2 == ChowVector(2, {g.from_word([1, 2]): 1, g.from_word([2, 1]): 1})

    point = a2.multiply_by_divisor(d1d1, 1)
    assert point == a2.schubert_class(a2.top_element)
    assert a2.point_degree(point) == 1

    assert a2.multiply_by_divisor(d1d1, 0).is_zero()


def test_product_of_divisors(ring):
    a2 = ring("A2")
    assert a2.product_of_divisors(MultiDegree((0, 0))) == a2.unit()
    assert a2.product_of_divisors(MultiDegree((2, 1))).terms() == [(a2.top_element, 1)]
    assert a2.product_of_divisors(MultiDegree((3, 0))).is_zero()
    assert a2.product_of_divisors(MultiDegree((4, 1))).is_zero()

    mf, witness = a2.is_multiplicity_free(a2.product_of_divisors(MultiDegree((1, 1))))
    assert mf
    assert witness.length == 2


def test_all_twos_is_not_multiplicity_free(ring):
    a2 = ring("A2")
    g = a2.group
    v = ChowVector(2, {g.from_word([1, 2]): 2, g.from_word([2, 1]): 2})
    assert v.is_multiplicity_free() == (False, None)
    assert v.min_nonzero_coefficient() == 2


def test_zero_vector():
    zero = ChowVector(5)
    assert zero.is_zero()
    assert zero.min_nonzero_coefficient() is None
    assert zero == ChowVector(2, {})
    assert len(zero) == 0


def test_point_degree(ring):
    a2 = ring("A2")
    assert a2.point_degree(ChowVector(3)) == 0
    with pytest.raises(WrongGrade):
        a2.point_degree(a2.divisor(0))


def test_a3_point_degree_matches_oracle(ring, root_system):
    a3 = ring("A3")
    deg = MultiDegree((1, 2, 3))
    table = DenseChowTable(root_system("A3"))
    assert a3.point_degree(a3.product_of_divisors(deg)) == oracle_product(table, deg)[table.top]


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "G2"])
def test_divisor_multiplication_commutes(ring, label):
    r = ring(label)
    rank = r.rs.rank
    for deg in monomials(rank, r.dim_flag - 2):
        v = r.product_of_divisors(deg)
        for i in range(rank):
            for j in range(i + 1, rank):
                left = r.multiply_by_divisor(r.multiply_by_divisor(v, i), j)
                right = r.multiply_by_divisor(r.multiply_by_divisor(v, j), i)
                assert left == right


@pytest.mark.slow
def test_divisor_multiplication_commutes_at_e6(ring):
    e6 = ring("E6")
    rng = random.Random(20231)
    checked = 0
    while checked < 1000:
        v = e6.unit()
        for _ in range(12):
            i, j = rng.randrange(6), rng.randrange(6)
            left = e6.multiply_by_divisor(e6.multiply_by_divisor(v, i), j)
            right = e6.multiply_by_divisor(e6.multiply_by_divisor(v, j), i)
            assert left == right
            checked += 1
            v = e6.multiply_by_divisor(v, rng.randrange(6))


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "B3", "C3", "G2", "D4"])
def test_grading_and_support_saturation(ring, root_system, label):
    r = ring(label)
    layers = r.group.elements_by_length()
    counts = root_system(label).poincare_coefficients()

    v = r.unit()
    for k in range(1, r.dim_flag + 2):
        total: Dict[WeylElement, int] = {}
        for i in range(r.rs.rank):
            product = r.multiply_by_divisor(v, i)
            assert product.grade == k
            for w, c in product.support.items():
                assert w.length == k
                total[w] = total.get(w, 0) + c
        v = ChowVector(k, total)
        if k > r.dim_flag:
            assert v.is_zero()
        else:
            assert set(v.support) == set(layers[k])
            assert len(v) == counts[k]


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "G2"])
def test_minimum_coefficient_never_decreases(ring, label):
    r = ring(label)
    for deg in monomials(r.rs.rank, r.dim_flag - 1):
        v = r.product_of_divisors(deg)
        if v.is_zero():
            continue
        for i in range(r.rs.rank):
            product = r.multiply_by_divisor(v, i)
            if not product.is_zero():
                assert product.min_nonzero_coefficient() >= v.min_nonzero_coefficient()


@pytest.mark.parametrize("label", ["A3", "B2", "G2"])
def test_top_degree_monomials_have_positive_degree(ring, label):
    r = ring(label)
    for deg in monomials(r.rs.rank, r.dim_flag):
        if deg.total != r.dim_flag:
            continue
        v = r.product_of_divisors(deg)
        if not v.is_zero():
            assert r.point_degree(v) >= 1


def test_checked_backends(ring, root_system):
    with pytest.raises(CoefficientOverflow):
        CheckedFixedBackend(64).check(2 ** 63)
    assert CheckedFixedBackend(64).check(2 ** 63 - 1) == 2 ** 63 - 1
    assert backend_for("checked128").ceiling == 2 ** 127 - 1
    with pytest.raises(ValueError):
        backend_for("float")

    checked = ChowRing(root_system("B3"), backend_for("checked"))
    plain = ring("B3")
    deg = MultiDegree((3, 3, 3))
    assert checked.product_of_divisors(deg) == plain.product_of_divisors(deg)


def test_tiny_checked_backend_overflows(root_system):
    class Tiny(CheckedFixedBackend):
        def __init__(self) -> None:
            super().__init__(64)
            self.ceiling = 0

    r = ChowRing(root_system("A2"), Tiny())
    with pytest.raises(CoefficientOverflow):
        r.product_of_divisors(MultiDegree((1, 0)))


def test_cover_cache(root_system):
    rs = root_system("B3")
    cached = ChowRing(rs, cover_cache_size=1024)
    small = ChowRing(rs, cover_cache_size=1)
    deg = MultiDegree((2, 3, 2))
    assert cached.product_of_divisors(deg) == small.product_of_divisors(deg)
    cached.product_of_divisors(deg)
    assert cached.cache_info().hits > 0
    assert small.cache_info().currsize <= 1


def test_multidegree_parsing():
    assert MultiDegree.parse("2, 1", 2) == MultiDegree((2, 1))
    assert str(MultiDegree((2, 1))) == "2,1"
    assert MultiDegree((2, 1)).total == 3
    assert MultiDegree((0, 2, 0)).last_index() == 1
    assert MultiDegree.zero(3).last_index() == -1
    with pytest.raises(InvalidDegree):
        MultiDegree.parse("1,x", 2)
    with pytest.raises(InvalidDegree):
        MultiDegree.parse("1,2,3", 2)
    with pytest.raises(InvalidDegree):
        MultiDegree.parse("-1,2", 2)


def test_product_expansion(ring):
    a2 = ring("A2")
    deg = MultiDegree((2, 1))
    expansion = ProductExpansion.of(a2, deg, a2.product_of_divisors(deg))
    assert expansion.to_lines() == ["1\t1 2 1"]
    assert expansion.multiplicity_free
    assert expansion.witness_word == "1 2 1"
    assert ProductExpansion.model_validate_json(expansion.model_dump_json()) == expansion

    zero = MultiDegree((3, 0))
    empty = ProductExpansion.of(a2, zero, a2.product_of_divisors(zero))
    assert empty.terms == []
    assert not empty.multiplicity_free


@pytest.mark.parametrize("label, limit", [("B3", 9), ("D4", 6), ("F4", 5), ("E6", 4)])
def test_batched_and_elementwise_products_agree(root_system, label, limit):
    rs = root_system(label)
    batched = ChowRing(rs, small_support=0)
    elementwise = ChowRing(rs, small_support=1 << 30)
    for deg in monomials(rs.rank, limit):
        left, right = batched.product_of_divisors(deg), elementwise.product_of_divisors(deg)
        assert left == right
        assert left.is_multiplicity_free() == right.is_multiplicity_free()
        assert left.min_nonzero_coefficient() == right.min_nonzero_coefficient()
        assert left.ones() == right.ones()


def test_chunked_products_merge_across_chunks(root_system, monkeypatch):
    import src.chow.ChowRing as chow_ring

    monkeypatch.setattr(chow_ring, "CHUNK_ROWS", 5)
    monkeypatch.setattr(chow_ring, "MERGE_FLOOR", 8)
    rs = root_system("D4")
    chunked = ChowRing(rs, small_support=0)
    plain = ChowRing(rs, small_support=1 << 30)
    for deg in [MultiDegree((2, 3, 2, 1)), MultiDegree((0, 6, 0, 0)), MultiDegree((3, 2, 3, 3))]:
        assert chunked.product_of_divisors(deg) == plain.product_of_divisors(deg)


@pytest.mark.parametrize("small_support", [0, 64])
def test_huge_coefficients_stay_exact(root_system, small_support):
    a3 = ChowRing(root_system("A3"), small_support=small_support)
    g = a3.group
    s1, s2 = g.from_word([1]), g.from_word([2])
    big = 2 ** 62 + 1
    product = a3.multiply_by_divisor(ChowVector(1, {s1: big, s2: 3}), 1)

    expected: Dict[WeylElement, int] = {}
    for w, c in ((s1, big), (s2, 3)):
        for up, k in a3.multiply_by_divisor(a3.schubert_class(w), 1).terms():
            expected[up] = expected.get(up, 0) + c * k
    assert product == ChowVector(2, expected)
    assert max(c for _, c in product.terms()) >= big

    with pytest.raises(CoefficientOverflow):
        ChowRing(root_system("A3"), CheckedFixedBackend(64), small_support=small_support).multiply_by_divisor(
            ChowVector(1, {s1: 2 ** 63}), 0
        )


def test_reducible_type_with_a_late_highest_root(reducible_system):
    from src.rootsys.RootSystem import build_root_system
    from src.rootsys.file.CartanFileLoader import CartanFileLoader

    r = ChowRing(reducible_system)
    g2 = ChowRing(build_root_system(CartanFileLoader.parse("2\n2 -3\n-1 2\n")))
    for n in [(1, 0), (1, 1), (2, 1), (3, 3)]:
        product = r.product_of_divisors(MultiDegree(n + (0,) * 6))
        expected = g2.product_of_divisors(MultiDegree(n))
        assert sorted(c for _, c in product.terms()) == sorted(c for _, c in expected.terms())
    assert not r.product_of_divisors(MultiDegree((1, 1, 0, 0, 0, 0, 0, 0))).is_zero()
