from typing import List, Optional

from pydantic import BaseModel, Field


class Mismatch(BaseModel):
    """A coefficient where two sides disagree; values are canonical scalar strings."""
    n: str  # exponent, "7" or "17/8" on fractional grids
    lhs: str
    rhs: str


class VerificationReport(BaseModel):
    """Outcome of certifying one registry identity."""
    id: str
    status: str  # 'PASS' or 'FAIL'
    bound: int
    checked: int
    mismatches: List[Mismatch] = []
    elapsed_ms: int = 0
    space: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


class CrosscheckReport(BaseModel):
    """Zero pattern of a coefficient family against its vanishing predicate."""
    id: str
    status: str
    bound: int
    checked: int
    mismatches: List[Mismatch] = []
    elapsed_ms: int = 0
    zero_count: int = 0
    nonzero_count: int = 0


class ScanReport(BaseModel):
    """Forbidden zeros and growth minima over a residue class."""
    id: str
    status: str
    bound: int
    checked: int
    mismatches: List[Mismatch] = []
    elapsed_ms: int = 0
    zeros: List[int] = Field(default_factory=list)
    non_positive: List[int] = Field(default_factory=list)
    min_g_squared: Optional[str] = None
    min_g_at: Optional[int] = None
