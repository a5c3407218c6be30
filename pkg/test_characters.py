from fractions import Fraction

import pytest
from sympy import jacobi_symbol

from etaq.services.characters import (
    DirichletChar,
    char_parity,
    fundamental_discriminant,
    gen_bernoulli,
    kronecker,
    l_value,
)
from etaq.utils.errors import InvalidDiscriminant


@pytest.mark.parametrize("D", [-8, -7, -4, -3, 5, 8, 12, 13, -24])
def test_kronecker_agrees_with_jacobi_on_odd_moduli(D):
    for n in range(3, 200, 2):
        assert kronecker(D, n) == jacobi_symbol(D % n, n)


def test_kronecker_at_two_and_signs():
    assert kronecker(-3, 2) == -1
    assert kronecker(5, 2) == -1
    assert kronecker(-7, 2) == 1
    assert kronecker(-4, 2) == 0
    assert kronecker(-4, -1) == -1
    assert kronecker(12, -1) == 1
    assert kronecker(1, 0) == 1
    assert kronecker(12, 0) == 0


def test_chi12_values():
    chi = DirichletChar(12)
    assert [chi(n) for n in range(1, 13)] == [1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1, 0]
    assert chi.conductor == 12
    assert char_parity(chi) == "even"


def test_odd_characters():
    assert char_parity(DirichletChar(-4)) == "odd"
    assert char_parity(DirichletChar(-8)) == "odd"
    assert DirichletChar(-8)(3) == 1
    assert DirichletChar(8)(3) == -1


def test_fundamental_part():
    assert fundamental_discriminant(-16) == -4
    assert fundamental_discriminant(48) == 12
    assert fundamental_discriminant(9) == 1
    assert DirichletChar(-16) == DirichletChar(-4)
    assert DirichletChar(9).is_trivial


def test_products_of_characters():
    assert DirichletChar(-3) * DirichletChar(-4) == DirichletChar(12)
    assert DirichletChar(-4) ** 2 == DirichletChar(1)
    assert str(DirichletChar.parse("chi_-8")) == "chi_-8"


def test_zero_discriminant():
    with pytest.raises(InvalidDiscriminant) as err:
        DirichletChar(0)
    assert err.value.exit_code == 2
    with pytest.raises(InvalidDiscriminant):
        kronecker(0, 3)


def test_generalized_bernoulli():
    assert gen_bernoulli(1, DirichletChar(-4)) == Fraction(-1, 2)
    assert gen_bernoulli(1, DirichletChar(-3)) == Fraction(-1, 3)
    assert gen_bernoulli(2, DirichletChar(1)) == Fraction(1, 6)


def test_l_values():
    assert l_value(-1, DirichletChar(1)) == Fraction(-1, 12)
    assert l_value(0, DirichletChar(-4)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        l_value(1, DirichletChar(-4))
