from src.chow.MultiDegree import MultiDegree
from src.weyl.WeylElement import WeylElement


class Witness:
    """
    Witness certifies a multiplicity-free monomial: the coefficient of [Z_w] in
    [D_1]^n_1 ... [D_r]^n_r is exactly 1 for w = witness_element.
    """

    def __init__(self, degrees: MultiDegree, witness_element: WeylElement, word: str) -> None:
        self.degrees = degrees
        self.witness_element = witness_element
        self.word = word

    @property
    def total(self) -> int:
        return self.degrees.total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Witness):
            return NotImplemented
        return self.degrees == other.degrees and self.witness_element == other.witness_element

    def __repr__(self) -> str:
        return f"Witness(degrees={self.degrees}, word='{self.word}', total={self.total})"

    def __str__(self) -> str:
        return self.__repr__()
