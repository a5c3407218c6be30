from fractions import Fraction

import pytest

from etaq.models.meta import FormMeta
from etaq.services.characters import TRIVIAL, DirichletChar
from etaq.services.forms import eta_expand, theta
from etaq.services.newforms import newform_expand
from etaq.services.operators import (
    OpDescriptor,
    meta_bracket,
    meta_eisenstein,
    meta_product,
    meta_transform,
    op_hecke,
    op_sieve,
    op_U,
    op_V,
)
from etaq.services.qseries import parse_eta_spec
from etaq.utils.errors import FractionalGrid, HypothesisViolation

THETA_META = FormMeta(weight=Fraction(1, 2), level=4)


def test_U_compresses():
    t = op_U(theta(40), 4)
    assert t.known_through() == 11
    assert all(t[n] == theta(10)[n] for n in range(11))


def test_V_dilates():
    t = op_V(theta(5), 2)
    assert t[2] == 2
    assert t[8] == 2
    assert t[1] == 0
    assert t.trunc == 12


def test_sieve_keeps_one_class():
    s = op_sieve(theta(20), 4, 1)
    assert s[1] == 2
    assert s[9] == 2
    assert s[0] == 0
    assert s[4] == 0
    with pytest.raises(ValueError):
        op_sieve(theta(5), 4, 4)


def test_fractional_grid_rejected():
    f = eta_expand(parse_eta_spec("1^1"), 5)
    with pytest.raises(FractionalGrid):
        op_U(f, 2)


def test_hecke_eigenvalue():
    # g4 is a T_5 eigenform with eigenvalue c(5)
    g = newform_expand("g4", 200)
    t5 = op_hecke(g, 5, 3, DirichletChar(-4))
    assert all(t5[n] == g[5] * g[n] for n in range(1, 41))


def test_descriptor_parse():
    op = OpDescriptor.parse("S:3:1")
    assert op.kind == "S"
    assert op.params == (3, 1)
    assert str(op) == "S:3:1"
    with pytest.raises(ValueError):
        OpDescriptor("S", (3, 3))
    with pytest.raises(ValueError):
        OpDescriptor("T", (4,))
    assert op.apply(theta(20))[1] == 2


def test_integral_weight_metadata():
    meta = FormMeta(weight=2, level=36, character=DirichletChar(12))
    assert meta_transform(OpDescriptor("V", (2,)), meta).level == 72
    assert meta_transform(OpDescriptor("S", (3, 1)), meta).level == 36
    assert meta_transform(OpDescriptor("S", (12, 2)), meta).level == 144
    with pytest.raises(HypothesisViolation):
        meta_transform(OpDescriptor("S", (5, 1)), meta)


def test_half_integral_metadata():
    assert meta_transform(OpDescriptor("V", (9,)), THETA_META).level == 36
    assert meta_transform(OpDescriptor("S", (4, 1)), THETA_META).level == 16
    with pytest.raises(HypothesisViolation):
        meta_transform(OpDescriptor("S", (2, 1)), THETA_META)


def test_products_and_brackets():
    theta9 = meta_transform(OpDescriptor("V", (9,)), THETA_META)
    bracket = meta_bracket(theta9, THETA_META, 1)
    assert bracket.weight == 3
    assert bracket.level == 36
    assert bracket.character == DirichletChar(-4)
    assert bracket.is_cuspidal
    square = meta_product(THETA_META, THETA_META)
    assert square.weight == 1
    assert square.character == DirichletChar(-4)


def test_eisenstein_metadata():
    meta = meta_eisenstein(2, DirichletChar(-3), DirichletChar(-4), 3)
    assert meta.level == 36
    assert meta.character == DirichletChar(12)
    with pytest.raises(HypothesisViolation):
        meta_eisenstein(2, TRIVIAL, TRIVIAL)


def test_meta_validation():
    with pytest.raises(ValueError):
        FormMeta(weight=Fraction(1, 2), level=6)
    with pytest.raises(ValueError):
        FormMeta(weight=2, level=6, character=DirichletChar(-4))
