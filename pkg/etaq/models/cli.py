from typing import Optional

from pydantic import BaseModel, field_validator

from etaq.config import DEFAULT_JOBS, DEFAULT_LIMIT


class CliConfig(BaseModel):
    """Options shared by every subcommand."""
    command: str
    spec: Optional[str] = None
    limit: int = DEFAULT_LIMIT
    format: str = "json"
    cache_dir: Optional[str] = None
    jobs: int = DEFAULT_JOBS
    include_n0: bool = False

    @field_validator("limit")
    @classmethod
    def _limit_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("limit must be at least 1")
        return value

    @field_validator("jobs")
    @classmethod
    def _jobs_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("jobs must be at least 1")
        return value

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("json", "table"):
            raise ValueError("format must be json or table")
        return value
