from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from src.candim.ReferenceTable import ReferenceKind

UPPER_BOUND_NOTE = (
    "upper bound for the canonical 0-dimension cd_0 of the split group: "
    "dim(G/B) minus the largest total degree of a multiplicity-free product of Schubert divisors"
)


class WitnessRecord(BaseModel):
    degrees: List[int]
    word: str


class ReferenceRecord(BaseModel):
    kind: ReferenceKind
    value: Optional[int] = None


class ReportStats(BaseModel):
    seconds: float = 0.0
    peak_bytes: int = 0
    worker_peak_bytes: int = 0


class BoundReport(BaseModel):
    """
    Result of a bound run as published on stdout. Everything but `stats` is a
    deterministic function of the input type.
    """

    label: str
    rank: int = Field(ge=1)
    dim_flag: int = Field(ge=0)
    max_mf_degree: int = Field(ge=0)
    bound: int = Field(ge=0)
    exhaustive: bool
    witness: WitnessRecord
    reference: Optional[ReferenceRecord] = None
    known_value_note: Optional[str] = None
    stats: ReportStats = Field(default_factory=ReportStats)
    version: str
    note: str = UPPER_BOUND_NOTE

    @model_validator(mode="after")
    def check_bound(self) -> "BoundReport":
        if self.bound != self.dim_flag - self.max_mf_degree:
            raise ValueError(f"bound {self.bound} is not dim_flag {self.dim_flag} - N {self.max_mf_degree}")
        if self.bound > self.dim_flag:
            raise ValueError(f"bound {self.bound} exceeds dim_flag {self.dim_flag}")
        if self.reference is not None and self.reference.kind == "exact" and self.bound < self.reference.value:
            raise ValueError(f"bound {self.bound} undercuts the known exact value {self.reference.value}")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    def deterministic_part(self) -> Dict[str, Any]:
        """
        The report without its run statistics, for comparing runs.
        """
        return self.model_dump(exclude={"stats"})

    @classmethod
    def from_json(cls, text: str) -> "BoundReport":
        return cls.model_validate_json(text)

    @classmethod
    def json_schema(cls) -> Dict[str, Any]:
        return cls.model_json_schema()
