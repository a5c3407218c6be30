"""Exact scalars: rationals and elements a + b*sqrt(d) of a quadratic field."""
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from etaq.utils.arith import is_squarefree
from etaq.utils.errors import DivisionByZero, FieldMismatch

Rational = Union[int, Fraction]

_TEXT_PATTERN = re.compile(r"^(-?\d+(?:/\d+)?)(?: \+ (-?\d+(?:/\d+)?)\*sqrt\((-?\d+)\))?$")


@lru_cache(maxsize=None)
def check_field_tag(d: Optional[int]) -> None:
    if d is None:
        return
    if d in (0, 1) or not is_squarefree(d):
        raise ValueError(f"field tag {d} is not a squarefree integer outside {{0, 1}}")


def common_field(d1: Optional[int], d2: Optional[int]) -> Optional[int]:
    """Field tag of a binary operation, coercing rationals."""
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise FieldMismatch(f"cannot combine sqrt({d1}) with sqrt({d2})")


class QuadScalar:
    """Immutable element a + b*sqrt(d); b == 0 means the rational tag d = None."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: Optional[int] = None):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            d = None
        elif d is None:
            raise ValueError("irrational part needs a field tag")
        else:
            check_field_tag(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    @classmethod
    def sqrt(cls, d: int, coefficient: Rational = 1) -> "QuadScalar":
        """coefficient * sqrt(d)."""
        check_field_tag(d)
        return cls(0, coefficient, d)

    @classmethod
    def coerce(cls, value: Union["QuadScalar", Rational]) -> "QuadScalar":
        if isinstance(value, QuadScalar):
            return value
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "QuadScalar":
        """Inverse of str(): "a" or "a + b*sqrt(d)"."""
        match = _TEXT_PATTERN.match(text.strip())
        if not match:
            raise ValueError(f"not a quadratic scalar: {text!r}")
        a, b, d = match.groups()
        if b is None:
            return cls(Fraction(a))
        return cls(Fraction(a), Fraction(b), int(d))

    def is_rational(self) -> bool:
        return self.d is None

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return norm(self)

    def __add__(self, other):
        other = QuadScalar.coerce(other)
        d = common_field(self.d, other.d)
        return QuadScalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadScalar.coerce(other))

    def __rsub__(self, other):
        return QuadScalar.coerce(other) - self

    def __mul__(self, other):
        return quad_mul(self, QuadScalar.coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return quad_mul(self, quad_inv(QuadScalar.coerce(other)))

    def __rtruediv__(self, other):
        return quad_mul(QuadScalar.coerce(other), quad_inv(self))

    def __pow__(self, e: int):
        result = QuadScalar(1)
        base = self if e >= 0 else quad_inv(self)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __bool__(self):
        return not quad_is_zero(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadScalar(other)
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __str__(self):
        if self.d is None:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"

    def __repr__(self):
        return f"QuadScalar({self})"


ZERO = QuadScalar(0)
ONE = QuadScalar(1)


def quad_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    """Exact product; rational factors coerce into the other field."""
    d = common_field(x.d, y.d)
    if d is None:
        return QuadScalar(x.a * y.a)
    return QuadScalar(x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a, d)


def norm(x: QuadScalar) -> Fraction:
    """a^2 - d*b^2."""
    if x.d is None:
        return x.a * x.a
    return x.a * x.a - x.d * x.b * x.b


def quad_inv(x: QuadScalar) -> QuadScalar:
    """Inverse via conjugate over norm."""
    n = norm(x)
    if n == 0:
        raise DivisionByZero("inverse of zero")
    return QuadScalar(x.a / n, -x.b / n, x.d)


def quad_is_zero(x: QuadScalar) -> bool:
    return x.a == 0 and x.b == 0


def squared_abs_bound(x: QuadScalar) -> Fraction:
    """|x|^2 for imaginary fields, max of the squared real embeddings otherwise."""
    if x.d is None:
        return x.a * x.a
    if x.d < 0:
        return norm(x)
    # (|a| + |b|sqrt(d))^2 = a^2 + d b^2 + 2|ab|sqrt(d) is irrational; callers compare it
    # against a rational bound through squared_abs_at_most.
    raise ValueError("real quadratic values need squared_abs_at_most")


def squared_abs_at_most(x: QuadScalar, bound: Fraction) -> bool:
    """Exact test of max over embeddings |a +- b sqrt(d)|^2 <= bound."""
    if x.d is None or x.d < 0:
        return squared_abs_bound(x) <= bound
    # largest embedding is |a| + |b|sqrt(d); square: s + t sqrt(d) with s, t >= 0
    s = x.a * x.a + x.d * x.b * x.b
    t = 2 * abs(x.a * x.b)
    if s > bound:
        return False
    # t sqrt(d) <= bound - s  <=>  t^2 d <= (bound - s)^2
    return t * t * x.d <= (bound - s) ** 2
