import pytest

from etaq.services.newforms import (
    NEWFORMS,
    deligne_bound_holds,
    gamma1_closed,
    get_newform,
    hecke_recursion_holds,
    newform_closed_series,
    newform_coeff_closed,
    newform_expand,
)
from etaq.services.scalars import QuadScalar
from etaq.utils.errors import UnknownIdentifier

SQRT_M2 = QuadScalar.sqrt(-2)
SQRT_2 = QuadScalar.sqrt(2)


def test_g1_prefix():
    g1 = newform_expand("g1", 10)
    assert [g1[n] for n in range(1, 9)] == [1, SQRT_M2, 0, -2, -SQRT_M2, 0, 0, -2 * SQRT_M2]


def test_g1_and_g2_are_conjugate():
    g1 = newform_expand("g1", 100)
    g2 = newform_expand("g2", 100)
    assert all(g2[n] == g1[n].conjugate() for n in range(1, 101))


def test_g7_prefix():
    g7 = newform_expand("g7", 9)
    assert g7[1] == 1
    assert g7[3] == 4 * SQRT_2
    assert g7[9] == 23


def test_g8_prefix():
    g8 = newform_expand("g8", 9)
    assert g8[1] == 1
    assert g8[3] == 2
    assert g8[9] == -5


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (4, -2), (8, -2), (16, 4), (32, 4), (64, -8), (3, 0)])
def test_gamma1(n, expected):
    assert gamma1_closed(n) == expected


def test_gamma1_describes_g1():
    g1 = newform_expand("g1", 300)
    for n in range(1, 301):
        expected = gamma1_closed(n) * SQRT_M2 if n % 3 == 2 else QuadScalar(gamma1_closed(n))
        assert g1[n] == expected


@pytest.mark.parametrize("name", sorted(NEWFORMS))
def test_closed_form_matches_theta_construction(name):
    series = newform_expand(name, 300)
    closed = newform_closed_series(name, 300)
    assert all(series[n] == closed[n] for n in range(301))
    assert newform_coeff_closed(name, 1) == 1


@pytest.mark.parametrize("name", sorted(NEWFORMS))
def test_hecke_and_deligne(name):
    assert hecke_recursion_holds(name, 400)
    assert deligne_bound_holds(name, 400)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(NEWFORMS))
def test_closed_forms_desk_scale(name):
    series = newform_expand(name, 2000)
    closed = newform_closed_series(name, 2000)
    assert all(series[n] == closed[n] for n in range(2001))


def test_unknown_newform():
    with pytest.raises(UnknownIdentifier):
        get_newform("g9")
    with pytest.raises(ValueError):
        newform_coeff_closed("g1", 0)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(NEWFORMS))
def test_hecke_and_deligne_desk_scale(name):
    assert hecke_recursion_holds(name, 2000)
    assert deligne_bound_holds(name, 5000)
