from typing import List, Set, Tuple

from src.chow.MultiDegree import MultiDegree
from src.rootsys.CartanDatum import CartanDatum

Permutation = Tuple[int, ...]


def diagram_automorphisms(datum: CartanDatum) -> List[Permutation]:
    """
    Permutations sigma of the simple indices with C[sigma(i)][sigma(j)] = C[i][j],
    i.e. automorphisms of the Dynkin diagram respecting bond multiplicities and
    arrows. The identity comes first.
    """
    c = datum.matrix
    r = datum.rank
    found: List[Permutation] = []

    def extend(assigned: List[int], used: Set[int]) -> None:
        i = len(assigned)
        if i == r:
            found.append(tuple(assigned))
            return
        for image in range(r):
            if image in used:
                continue
            if all(c[image][assigned[j]] == c[i][j] and c[assigned[j]][image] == c[j][i] for j in range(i)):
                assigned.append(image)
                used.add(image)
                extend(assigned, used)
                used.discard(image)
                assigned.pop()

    extend([], set())
    return sorted(found)


class DiagramSymmetry:
    """
    Orbits of multidegrees under the diagram automorphism group. A diagram
    automorphism permutes the Schubert divisors and induces a ring automorphism that
    permutes Schubert classes, so coefficients, minima and multiplicity-freeness are
    constant on orbits.

    The canonical representative of an orbit is its lexicographically largest member.
    Dropping one exponent from the last nonzero index of a canonical multidegree gives
    a canonical multidegree again, so canonical nodes form a subtree of the DFS.
    """

    def __init__(self, datum: CartanDatum, enabled: bool = True) -> None:
        identity = tuple(range(datum.rank))
        self.permutations: List[Permutation] = diagram_automorphisms(datum) if enabled else [identity]

    @property
    def order(self) -> int:
        return len(self.permutations)

    def is_canonical(self, deg: MultiDegree) -> bool:
        n = deg.n
        return all(tuple(n[s] for s in sigma) <= n for sigma in self.permutations)

    def orbit(self, deg: MultiDegree) -> Set[MultiDegree]:
        return {deg.permuted(sigma) for sigma in self.permutations}
