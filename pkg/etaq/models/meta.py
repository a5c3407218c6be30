from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from etaq.services.characters import TRIVIAL, DirichletChar


class FormMeta(BaseModel):
    """Weight, level and character of a space M_k(Gamma0(N), chi)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    weight: Fraction
    level: int
    character: DirichletChar = TRIVIAL
    is_cuspidal: bool = False

    @field_validator("weight", mode="before")
    @classmethod
    def _as_fraction(cls, value):
        return Fraction(value)

    @model_validator(mode="after")
    def _check_level(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.weight <= 0 or (2 * self.weight).denominator != 1:
            raise ValueError(f"weight {self.weight} is not a positive half-integer")
        if self.weight.denominator == 2 and self.level % 4:
            raise ValueError("half-integral weight needs 4 | level")
        if self.level % self.character.conductor:
            raise ValueError(f"conductor of {self.character} does not divide {self.level}")
        return self

    @property
    def is_half_integral(self) -> bool:
        return self.weight.denominator == 2

    def __str__(self):
        kind = "S" if self.is_cuspidal else "M"
        return f"{kind}_{self.weight}(Gamma0({self.level}), {self.character})"
