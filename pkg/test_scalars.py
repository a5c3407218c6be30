from fractions import Fraction

import pytest

from etaq.services.scalars import QuadScalar, norm, squared_abs_at_most
from etaq.utils.errors import DivisionByZero, FieldMismatch

SQRT_M2 = QuadScalar.sqrt(-2)
SQRT_2 = QuadScalar.sqrt(2)


def test_products_and_norms():
    x = 1 + SQRT_M2
    assert x * x.conjugate() == 3
    assert norm(x) == 3
    assert SQRT_2 * SQRT_2 == 2
    assert (SQRT_M2 * SQRT_M2).is_rational()


def test_inverse():
    x = QuadScalar(1, 1, 2)
    assert x * (1 / x) == 1
    with pytest.raises(DivisionByZero):
        1 / QuadScalar(0)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        SQRT_2 + SQRT_M2


def test_rationals_coerce_into_any_field():
    assert (SQRT_2 + Fraction(1, 2)).d == 2
    assert (QuadScalar(3) * SQRT_M2) == QuadScalar(0, 3, -2)


@pytest.mark.parametrize("value", [
    QuadScalar(0),
    QuadScalar(Fraction(-7, 3)),
    QuadScalar(Fraction(1, 2), -3, -2),
    QuadScalar(0, Fraction(1, 8), 2),
    QuadScalar(10**60, 1, -1),
])
def test_text_form_parses_back(value):
    assert QuadScalar.parse(str(value)) == value


def test_bad_field_tag():
    with pytest.raises(ValueError):
        QuadScalar.sqrt(4)
    with pytest.raises(ValueError):
        QuadScalar.sqrt(1)


@pytest.mark.parametrize("d", [4, 1, 0, -12])
def test_constructor_rejects_bad_field_tag(d):
    with pytest.raises(ValueError):
        QuadScalar(1, 1, d)
    assert QuadScalar(1, 0, d) == 1


def test_zero_is_falsy():
    assert not QuadScalar(0)
    assert SQRT_M2 - SQRT_M2 == 0
    assert not (SQRT_M2 - SQRT_M2)


def test_squared_abs_real_field():
    # (1 + sqrt 2)^2 = 3 + 2 sqrt 2, about 5.83
    x = 1 + SQRT_2
    assert squared_abs_at_most(x, Fraction(6))
    assert not squared_abs_at_most(x, Fraction(5))


def test_squared_abs_imaginary_field():
    assert squared_abs_at_most(2 * SQRT_M2, Fraction(8))
    assert not squared_abs_at_most(2 * SQRT_M2, Fraction(7))
