from typing import List, Optional

from pydantic import BaseModel

from src.chow.ChowRing import ChowRing
from src.chow.ChowVector import ChowVector
from src.chow.MultiDegree import MultiDegree


class ExpansionTerm(BaseModel):
    coefficient: int
    word: str


class ProductExpansion(BaseModel):
    """
    Schubert expansion of a divisor monomial, terms in canonical element order.
    """

    label: str
    degrees: List[int]
    grade: int
    terms: List[ExpansionTerm]
    multiplicity_free: bool
    witness_word: Optional[str] = None

    @classmethod
    def of(cls, ring: ChowRing, deg: MultiDegree, vector: ChowVector) -> "ProductExpansion":
        mf, witness = vector.is_multiplicity_free()
        return cls(
            label=ring.rs.label,
            degrees=list(deg.n),
            grade=deg.total,
            terms=[ExpansionTerm(coefficient=c, word=ring.group.word_string(w)) for w, c in vector.terms()],
            multiplicity_free=mf,
            witness_word=ring.group.word_string(witness) if mf else None,
        )

    def to_lines(self) -> List[str]:
        return [f"{term.coefficient}\t{term.word}" for term in self.terms]
