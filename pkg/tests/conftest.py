import functools

import pytest

from src.chow.ChowRing import ChowRing
from src.rootsys.RootSystem import RootSystem, build_root_system
from src.rootsys.file.CartanFileLoader import CartanFileLoader
from src.rootsys.labeled.LabeledCartanLoader import LabeledCartanLoader


@functools.lru_cache(maxsize=None)
def labeled(label: str) -> RootSystem:
    return build_root_system(LabeledCartanLoader(label).load())


@pytest.fixture
def root_system():
    return labeled


@pytest.fixture
def ring():
    def make(label: str) -> ChowRing:
        return ChowRing(labeled(label))

    return make


def g2_plus_a6() -> str:
    """
    Cartan matrix file of G2 (short root first) next to A6.
    """
    rows = [[0] * 8 for _ in range(8)]
    rows[0][:2] = [2, -3]
    rows[1][:2] = [-1, 2]
    for i in range(2, 8):
        rows[i][i] = 2
        if i > 2:
            rows[i][i - 1] = rows[i - 1][i] = -1
    return "8\n" + "\n".join(" ".join(str(x) for x in row) for row in rows) + "\n"


@pytest.fixture
def reducible_system():
    return build_root_system(CartanFileLoader.parse(g2_plus_a6()))
