"""Error hierarchy shared by the services and the command handlers.

Every error carries the process exit code the CLI reports for it.
"""


class EtaqError(Exception):
    """Base class for all etaq errors."""

    exit_code = 3


# Arithmetic failures (exit 3)

class FieldMismatch(EtaqError):
    """Two irrational values live in different quadratic fields."""


class DivisionByZero(EtaqError):
    """Inversion of an exact zero."""


class NonInvertibleLeadingTerm(EtaqError):
    """Series inversion with a vanishing leading coefficient."""


class FractionalGrid(EtaqError):
    """Operator needs an integer-grid series."""


class RecipeEvaluationError(EtaqError):
    """A registry recipe could not produce the requested coefficients."""


# Usage errors (exit 2)

class UsageError(EtaqError):
    exit_code = 2


class SpecParseError(UsageError):
    """Eta-spec string could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ParityMismatch(UsageError):
    """Theta exponent j does not match the parity of the character."""


class ParityObstruction(UsageError):
    """Eisenstein sign condition chi(-1)psi(-1) = (-1)^k fails."""


class HypothesisViolation(UsageError):
    """A metadata rule was applied outside its hypotheses."""


class DeltaNotDividingLevel(UsageError):
    """An eta factor delta does not divide the proposed level."""


class ResourceBudgetExceeded(UsageError):
    """Requested expansion is larger than the configured budget."""


class InvalidDiscriminant(UsageError):
    """Kronecker symbol or character with discriminant 0."""


# Lookup errors (exit 4)

class UnknownIdentifier(EtaqError):
    """Unknown registry record, family or newform name."""

    exit_code = 4
