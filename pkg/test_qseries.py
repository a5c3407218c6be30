import random
from fractions import Fraction

import pytest

from etaq.services.forms import eta_expand
from etaq.services.qseries import (
    QExpansion,
    c_coefficients,
    cube_pochhammer,
    parse_eta_spec,
    pochhammer,
    qx_invert,
    qx_mul,
    qx_theta_derivative,
    series_from_coefficients,
    truncate,
)
from etaq.services.scalars import QuadScalar
from etaq.utils.errors import FieldMismatch, NonInvertibleLeadingTerm, SpecParseError


def test_parse_eta_spec():
    spec = parse_eta_spec("1^-1 3^3 4^2")
    assert spec.factors == ((1, -1), (3, 3), (4, 2))
    assert spec.offset24 == 16
    assert spec.weight == 2
    assert str(spec) == "1^-1 3^3 4^2"
    assert parse_eta_spec("4^2   1^-1 3^3") == spec


@pytest.mark.parametrize("text, position", [
    ("1^-1 3^x", 5),
    ("0^2", 0),
    ("2^1 2^3", 4),
    ("", 0),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(SpecParseError) as err:
        parse_eta_spec(text)
    assert err.value.position == position
    assert err.value.exit_code == 2


def test_partition_numbers():
    assert c_coefficients(parse_eta_spec("1^-1"), 10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_pentagonal_and_cube_products():
    assert c_coefficients(parse_eta_spec("1^1"), 12) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
    assert c_coefficients(parse_eta_spec("1^3"), 10) == [1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9]
    assert pochhammer(1, 24 * 8).a == [1, -1, -1, 0, 0, 1, 0, 1]
    assert cube_pochhammer(2, 24 * 7).a == [1, 0, -3, 0, 0, 0, 5]


def test_eighth_power_of_eta():
    assert c_coefficients(parse_eta_spec("1^8"), 8) == [1, -8, 20, 0, -70, 64, 56, 0, -125]


def test_theta_fourth_power_counts_four_squares():
    assert c_coefficients(parse_eta_spec("1^-8 2^20 4^-8"), 5) == [1, 8, 24, 32, 24, 48]


def test_cube_steps_match_plain_steps():
    # exponent 7 splits into two cube steps and one pentagonal step
    direct = c_coefficients(parse_eta_spec("1^1"), 40)
    power = [1] + [0] * 40
    for _ in range(7):
        power = [sum(power[i] * direct[n - i] for i in range(n + 1)) for n in range(41)]
    assert c_coefficients(parse_eta_spec("1^7"), 40) == power


def test_eta_expand_prefactor():
    f = eta_expand(parse_eta_spec("1^1"), 4)
    assert f.den == 24
    assert f.coeff24(1) == 1
    assert f.coeff24(25) == -1
    assert f.coeff24(2) == 0
    assert f.known_through() > Fraction(4 * 24 + 1, 24)


def test_coefficient_beyond_truncation():
    f = series_from_coefficients([1, 2, 3])
    assert f[2] == 3
    with pytest.raises(IndexError):
        f[3]


def test_sum_truncates_at_shorter_side():
    f = series_from_coefficients([1, 1, 1, 1])
    g = series_from_coefficients([1, 1])
    assert (f + g).trunc == 2
    assert (f + g)[1] == 2


def test_fields_must_agree():
    f = series_from_coefficients([QuadScalar.sqrt(2)])
    g = series_from_coefficients([QuadScalar.sqrt(-2)])
    with pytest.raises(FieldMismatch):
        f + g


def test_inverse_of_one_minus_q():
    f = series_from_coefficients([1, -1, 0, 0, 0, 0])
    assert qx_invert(f).a == [1, 1, 1, 1, 1, 1]
    assert qx_mul(f, qx_invert(f)).a == [1, 0, 0, 0, 0, 0]


def test_inverse_needs_leading_term():
    with pytest.raises(NonInvertibleLeadingTerm):
        qx_invert(QExpansion(None, 1, 0, [0, 1]))


def test_quadratic_series_product():
    s = QuadScalar.sqrt(-2)
    f = series_from_coefficients([1, s])
    g = f * f
    assert g[1] == 2 * s
    assert g.trunc == 2


def test_theta_derivative_and_truncate():
    f = series_from_coefficients([1, 2, 0, 0, 2])
    df = qx_theta_derivative(f)
    assert df[1] == 2
    assert df[4] == 8
    assert truncate(f, 2).trunc == 3


def _random_series(rng, size, field=None, lead=None):
    coeffs = []
    for i in range(size):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if i == 0 and lead is not None:
            a = lead
        b = Fraction(rng.randint(-5, 5), rng.randint(1, 3)) if field is not None and i else 0
        coeffs.append(QuadScalar(a, b, field) if b else QuadScalar(a))
    return series_from_coefficients(coeffs, d=field)


def _coeffs(f, size):
    return [f[n] for n in range(size)]


@pytest.mark.parametrize("field", [None, -2, 3])
@pytest.mark.parametrize("seed", range(5))
def test_ring_laws_on_random_series(field, seed):
    rng = random.Random(seed)
    f, g, h = (_random_series(rng, 12, field) for _ in range(3))
    assert _coeffs(f * g, 12) == _coeffs(g * f, 12)
    assert _coeffs((f * g) * h, 12) == _coeffs(f * (g * h), 12)
    assert _coeffs(f * (g + h), 12) == _coeffs(f * g + f * h, 12)
    assert _coeffs(f - f, 12) == [0] * 12


@pytest.mark.parametrize("field", [None, -2, 5])
@pytest.mark.parametrize("seed", range(5))
def test_random_series_times_inverse_is_one(field, seed):
    rng = random.Random(100 + seed)
    f = _random_series(rng, 15, field, lead=Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 3)))
    product = qx_mul(f, qx_invert(f))
    assert _coeffs(product, 15) == [1] + [0] * 14
