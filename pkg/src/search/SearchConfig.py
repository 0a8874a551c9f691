from typing import Literal, Optional

from pydantic import BaseModel, Field

from src.config.Settings import Settings


def _settings() -> Settings:
    return Settings.from_env()


class SearchConfig(BaseModel):
    """
    Knobs of one multiplicity-free search run. Defaults come from the environment
    (see Settings); the CLI overrides them from flags.
    """

    target: Optional[int] = Field(default=None, ge=0)
    thread_count: int = Field(default=1, ge=1)
    memo_capacity: int = Field(default_factory=lambda: _settings().memo_capacity, ge=0)
    coefficient_backend: Literal["arbitrary", "checked", "checked128"] = "arbitrary"
    checkpoint_path: Optional[str] = None
    resume_path: Optional[str] = None
    symmetry_reduction: bool = True

    split_depth: int = Field(default_factory=lambda: _settings().split_depth, ge=0)
    cover_cache_size: int = Field(default_factory=lambda: _settings().cover_cache_size, ge=0)
    checkpoint_interval: float = Field(default_factory=lambda: _settings().checkpoint_interval, gt=0)
    support_limit: int = Field(default_factory=lambda: _settings().support_limit, ge=0)
    memory_limit_bytes: int = Field(default_factory=lambda: _settings().memory_limit_bytes, ge=0)

    # keep every multiplicity-free multidegree seen (small ranks only)
    collect_solutions: bool = False

    @property
    def checkpointing(self) -> bool:
        return self.checkpoint_path is not None or self.resume_path is not None
