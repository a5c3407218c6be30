"""U, V, sieving and Hecke operators with their metadata rules."""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from etaq.models.meta import FormMeta
from etaq.services.characters import DirichletChar
from etaq.services.qseries import QExpansion, normalize_grid, qx_add, qx_scale
from etaq.utils.arith import is_prime, radical
from etaq.utils.errors import FractionalGrid, HypothesisViolation

CHI_MINUS_4 = DirichletChar(-4)


def _lcm(*values: int) -> int:
    result = 1
    for v in values:
        result = result * v // math.gcd(result, v)
    return result


def integer_grid(f: QExpansion) -> QExpansion:
    """f on the grid Z, or FractionalGrid."""
    if not f.is_integer_grid():
        raise FractionalGrid("operator needs an integer-grid series")
    if f.den == 1:
        return f
    g = normalize_grid(f)
    if g.den != 1:
        raise FractionalGrid("operator needs an integer-grid series")
    return g


def op_U(f: QExpansion, ell: int) -> QExpansion:
    """sum c(ell n) q^n."""
    f = integer_grid(f)
    if ell == 1:
        return f
    first = -((-f.start) // ell)
    last = (f.trunc - 1) // ell
    idx = range(first * ell - f.start, last * ell - f.start + 1, ell)
    a = [f.a[i] for i in idx]
    b = None if f.b is None else [f.b[i] for i in idx]
    if not a:
        a = [0]
        b = None if b is None else [0]
    return QExpansion(f.d, 1, first, a, b)


def op_V(f: QExpansion, ell: int) -> QExpansion:
    """f(ell z): exponents multiply by ell."""
    if ell == 1:
        return f
    g = math.gcd(f.den, ell)
    den = f.den // g
    factor = ell // g
    size = len(f.a) * factor
    a = [0] * size
    a[::factor] = f.a
    b = None
    if f.b is not None:
        b = [0] * size
        b[::factor] = f.b
    return QExpansion(f.d, den, f.start * factor, a, b)


def op_sieve(f: QExpansion, M: int, m: int) -> QExpansion:
    """Keep the coefficients at n = m (mod M)."""
    if not 0 <= m < M:
        raise ValueError(f"residue {m} outside [0, {M})")
    f = integer_grid(f)
    keep = [(f.start + i) % M == m for i in range(len(f.a))]
    a = [x if k else 0 for x, k in zip(f.a, keep)]
    b = None if f.b is None else [y if k else 0 for y, k in zip(f.b, keep)]
    return QExpansion(f.d, 1, f.start, a, b)


def op_hecke(f: QExpansion, p: int, kappa: int, chi: DirichletChar) -> QExpansion:
    """c(pn) + chi(p) p^(kappa-1) c(n/p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = integer_grid(f)
    return qx_add(op_U(f, p), qx_scale(op_V(f, p), chi(p) * p ** (kappa - 1)))


@dataclass(frozen=True)
class OpDescriptor:
    """One of U:l, V:l, S:M:m, T:p."""

    kind: str
    params: Tuple[int, ...]

    def __post_init__(self):
        arity = {"U": 1, "V": 1, "S": 2, "T": 1}
        if self.kind not in arity or len(self.params) != arity[self.kind]:
            raise ValueError(f"bad operator {self.kind}{self.params}")
        if self.kind == "S" and not 0 <= self.params[1] < self.params[0]:
            raise ValueError("sieve residue must satisfy 0 <= m < M")
        if self.kind == "T" and not is_prime(self.params[0]):
            raise ValueError("Hecke index must be prime")
        if self.kind in ("U", "V") and self.params[0] < 1:
            raise ValueError("operator index must be positive")

    @classmethod
    def parse(cls, text: str) -> "OpDescriptor":
        kind, *params = text.split(":")
        return cls(kind, tuple(int(p) for p in params))

    def apply(self, f: QExpansion, meta: Optional[FormMeta] = None) -> QExpansion:
        if self.kind == "U":
            return op_U(f, self.params[0])
        if self.kind == "V":
            return op_V(f, self.params[0])
        if self.kind == "S":
            return op_sieve(f, *self.params)
        if meta is None or meta.is_half_integral:
            raise HypothesisViolation("Hecke operator needs an integral weight")
        return op_hecke(f, self.params[0], int(meta.weight), meta.character)

    def __str__(self):
        return ":".join([self.kind, *map(str, self.params)])


def meta_transform(op: OpDescriptor, meta: FormMeta) -> FormMeta:
    """Space of f|op for f in meta."""
    N, chi = meta.level, meta.character
    if meta.is_half_integral:
        if op.kind == "U":
            delta = op.params[0]
            return meta.model_copy(update={
                "level": 4 * _lcm(N // 4, radical(delta)),
                "character": chi * DirichletChar(4 * delta),
            })
        if op.kind == "V":
            delta = op.params[0]
            return meta.model_copy(update={"level": N * delta, "character": chi * DirichletChar(4 * delta)})
        if op.kind == "S":
            M = op.params[0]
            if 24 % M or M % 4 == 2:
                raise HypothesisViolation(f"half-integral sieving needs M | 24 and M != 2 (mod 4), got M = {M}")
            return meta.model_copy(update={"level": _lcm(N, M * M, M * chi.conductor)})
        raise HypothesisViolation("Hecke T_p is only tracked in integral weight")
    if op.kind == "V":
        return meta.model_copy(update={"level": N * op.params[0]})
    if op.kind == "S":
        M = op.params[0]
        if 24 % M:
            raise HypothesisViolation(f"integral sieving needs M | 24, got M = {M}")
        return meta.model_copy(update={"level": _lcm(N, M * M, M * chi.conductor)})
    if op.kind == "T":
        return meta
    raise HypothesisViolation("U_l has no metadata rule in integral weight")


def meta_product(m1: FormMeta, m2: FormMeta) -> FormMeta:
    """Space of the product of two forms."""
    level = _lcm(m1.level, m2.level)
    weight = m1.weight + m2.weight
    chi = m1.character * m2.character
    if m1.is_half_integral and m2.is_half_integral:
        chi = chi * CHI_MINUS_4 ** int(weight)
    elif m1.is_half_integral or m2.is_half_integral:
        integral = m2.weight if m1.is_half_integral else m1.weight
        chi = chi * CHI_MINUS_4 ** int(integral)
    return FormMeta(weight=weight, level=level, character=chi)


def meta_bracket(m1: FormMeta, m2: FormMeta, ell: int) -> FormMeta:
    """Space of the Rankin-Cohen bracket [f1, f2]_ell."""
    if m1.is_half_integral != m2.is_half_integral:
        raise HypothesisViolation("bracket of mixed integral and half-integral weights")
    chi = m1.character * m2.character
    if m1.is_half_integral:
        chi = chi * CHI_MINUS_4 ** int(m1.weight + m2.weight)
    return FormMeta(
        weight=m1.weight + m2.weight + 2 * ell,
        level=_lcm(m1.level, m2.level),
        character=chi,
        is_cuspidal=ell > 0,
    )


def meta_eisenstein(kappa: int, chi: DirichletChar, psi: DirichletChar, d: int = 1) -> FormMeta:
    """Space of E_{kappa,chi,psi}|V_d."""
    if kappa == 2 and chi.is_trivial and psi.is_trivial:
        raise HypothesisViolation("E_{2,chi1,chi1} is only quasi-modular; use the combination with V_d")
    return FormMeta(weight=Fraction(kappa), level=chi.conductor * psi.conductor * d, character=chi * psi)
