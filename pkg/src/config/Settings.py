import logging
import os

from pydantic import BaseModel, Field, field_validator


class Settings(BaseModel):
    """
    Process-wide defaults read from the environment.
    Command-line flags override these values per run.
    """

    memo_capacity: int = Field(default=1_000_000, ge=0)
    cover_cache_size: int = Field(default=2 ** 22, ge=0)
    checkpoint_interval: float = Field(default=60.0, gt=0)
    split_depth: int = Field(default=2, ge=0)
    support_limit: int = Field(default=0, ge=0)
    memory_limit_bytes: int = Field(default=0, ge=0)
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "Settings":
        values = {
            "memo_capacity": os.getenv("SCHUBERT_MEMO_CAPACITY"),
            "cover_cache_size": os.getenv("SCHUBERT_COVER_CACHE_SIZE"),
            "checkpoint_interval": os.getenv("SCHUBERT_CHECKPOINT_INTERVAL"),
            "split_depth": os.getenv("SCHUBERT_SPLIT_DEPTH"),
            "support_limit": os.getenv("SCHUBERT_SUPPORT_LIMIT"),
            "memory_limit_bytes": os.getenv("SCHUBERT_MEMORY_LIMIT_BYTES"),
            "log_level": os.getenv("SCHUBERT_LOG_LEVEL"),
        }
        # unset variables fall back to the field defaults
        return cls(**{key: value for key, value in values.items() if value not in (None, "")})

    @field_validator("log_level")
    @classmethod
    def known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level '{value}'")
        return level
