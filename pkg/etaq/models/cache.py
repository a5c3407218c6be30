from datetime import datetime
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, Field

from etaq.config import APP_VERSION
from etaq.services.scalars import QuadScalar


class CacheHeader(BaseModel):
    """First line of a coefficient cache file."""
    spec: str
    field: Optional[int] = None
    limit: int
    offset24: int = 0
    version: str = APP_VERSION
    created: str = Field(default_factory=lambda: datetime.now().isoformat())


class CoefficientRecord(BaseModel):
    """Coefficient of q^(k24/24) as (a_num/a_den) + (b_num/b_den)*sqrt(d); integers travel as decimal strings."""
    k24: int
    a_num: str
    a_den: str = "1"
    b_num: str = "0"
    b_den: str = "1"
    d: Optional[int] = None

    @classmethod
    def from_value(cls, k24: int, value: Union[int, Fraction, QuadScalar]) -> "CoefficientRecord":
        x = QuadScalar.coerce(value)
        return cls(
            k24=k24,
            a_num=str(x.a.numerator),
            a_den=str(x.a.denominator),
            b_num=str(x.b.numerator),
            b_den=str(x.b.denominator),
            d=x.d,
        )

    def to_scalar(self) -> QuadScalar:
        return QuadScalar(Fraction(int(self.a_num), int(self.a_den)), Fraction(int(self.b_num), int(self.b_den)), self.d)

    def to_int(self) -> int:
        """Integer value; raises ValueError for anything that is not a rational integer."""
        if self.d is not None or self.b_num != "0" or self.a_den != "1":
            raise ValueError(f"record at k24={self.k24} is not an integer")
        return int(self.a_num)
