"""
Standard finite Cartan types in Bourbaki numbering.
"""
import re
from typing import List, Tuple

from src.exceptions import UnknownType

LABEL_PATTERN = re.compile(r"^([A-Ga-g])_?(\d+)$")

# Bourbaki numbering throughout.
E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def parse_label(label: str) -> Tuple[str, int]:
    match = LABEL_PATTERN.match(label.strip())
    if match is None:
        raise UnknownType(f"'{label}' is not a Cartan type label such as A3, E6 or G2")
    family, rank = match.group(1).upper(), int(match.group(2))

    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not valid:
        raise UnknownType(f"there is no finite type {family}{rank}")
    return family, rank


def standard_root_count(family: str, rank: int) -> int:
    """
    Number of positive roots of a labeled finite type.
    """
    if family == "A":
        return rank * (rank + 1) // 2
    if family in ("B", "C"):
        return rank * rank
    if family == "D":
        return rank * (rank - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(family, rank)]


def gram_matrix(family: str, rank: int) -> List[List[int]]:
    """
    Inner products (alpha_i, alpha_j) of the simple roots, scaled to integers.
    """
    gram = [[0] * rank for _ in range(rank)]

    def bond(i: int, j: int, value: int) -> None:
        gram[i - 1][j - 1] = value
        gram[j - 1][i - 1] = value

    if family in ("A", "B", "C", "D"):
        for i in range(rank):
            gram[i][i] = 4
        chain = rank - 1 if family == "D" else rank
        for i in range(1, chain):
            bond(i, i + 1, -2)
        if family == "B":
            gram[rank - 1][rank - 1] = 2
        elif family == "C":
            gram[rank - 1][rank - 1] = 8
            bond(rank - 1, rank, -4)
        elif family == "D" and rank >= 3:
            bond(rank - 2, rank, -2)
    elif family == "E":
        for i in range(rank):
            gram[i][i] = 2
        for i, j in E_EDGES:
            if i <= rank and j <= rank:
                bond(i, j, -1)
    elif family == "F":
        gram[0][0] = gram[1][1] = 4
        gram[2][2] = gram[3][3] = 2
        bond(1, 2, -2)
        bond(2, 3, -2)
        bond(3, 4, -1)
    elif family == "G":
        gram[0][0] = 2
        gram[1][1] = 6
        bond(1, 2, -3)
    return gram


def cartan_matrix(family: str, rank: int) -> List[List[int]]:
    gram = gram_matrix(family, rank)
    return [[2 * gram[i][j] // gram[i][i] for j in range(rank)] for i in range(rank)]


