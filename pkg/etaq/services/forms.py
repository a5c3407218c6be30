"""Constructors for eta-quotients, theta series, Eisenstein series and Hurwitz class numbers."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Union

from etaq.models.meta import FormMeta
from etaq.services.characters import DirichletChar, TRIVIAL, char_parity, kronecker, l_value
from etaq.services.operators import op_U, op_V
from etaq.services.qseries import (
    EtaSpec,
    QExpansion,
    c_coefficients,
    qx_add,
    qx_mul,
    qx_scale,
    qx_theta_derivative,
    truncate,
)
from etaq.utils.arith import is_squarefree, radical, squarefree_kernel
from etaq.utils.errors import (
    DeltaNotDividingLevel,
    HypothesisViolation,
    ParityMismatch,
    ParityObstruction,
)

logger = logging.getLogger("forms_service")


# Eta-quotients


def eta_expand(spec: EtaSpec, limit: int) -> QExpansion:
    """q^(offset/24) * C(q), known through q^(offset/24 + limit)."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    offset = spec.offset24
    step = math.gcd(24, offset)
    den = 24 // step
    coeffs = c_coefficients(spec, limit)
    a = [0] * ((limit + 1) * den)
    a[::den] = coeffs
    return QExpansion(None, den, offset // step, a)


@dataclass(frozen=True)
class EtaRejection:
    """Why an eta-quotient fails the modularity criterion at a level."""

    condition: str
    value: int

    def __str__(self):
        return f"{self.condition} = {self.value} is not 0 (mod 24)"


def eta_meta(spec: EtaSpec, N: int) -> Union[FormMeta, EtaRejection]:
    """Space containing the eta-quotient at level N, or the violated condition."""
    for delta, _ in spec.factors:
        if N % delta:
            raise DeltaNotDividingLevel(f"{delta} does not divide {N}")
    if spec.weight.denominator != 1:
        return EtaRejection("sum of exponents", int(2 * spec.weight))
    if spec.offset24 % 24:
        return EtaRejection("sum delta*r", spec.offset24)
    dual = sum(N // delta * r for delta, r in spec.factors)
    if dual % 24:
        return EtaRejection("sum (N/delta)*r", dual)
    kappa = int(spec.weight)
    num = math.prod(delta ** r for delta, r in spec.factors if r > 0)
    den = math.prod(delta ** -r for delta, r in spec.factors if r < 0)
    discriminant = (-1) ** kappa * squarefree_kernel(num, den)
    return FormMeta(weight=kappa, level=N, character=DirichletChar(discriminant))


# Theta series


def theta_unary(D: int, j: int, limit: int) -> QExpansion:
    """sum over n in Z of chi_D(n) n^j q^(n^2)."""
    chi = DirichletChar(D)
    if (char_parity(chi) == "even") != (j == 0):
        raise ParityMismatch(f"{chi} is {char_parity(chi)} but j = {j}")
    a = [0] * (limit + 1)
    if j == 0:
        a[0] = chi(0)
    for n in range(1, math.isqrt(limit) + 1):
        a[n * n] += 2 * chi(n) * n**j
    return QExpansion(None, 1, 0, a)


def theta(limit: int) -> QExpansion:
    """The classical theta function sum q^(n^2)."""
    return theta_unary(1, 0, limit)


def theta_meta(D: int, j: int) -> FormMeta:
    chi = DirichletChar(D)
    return FormMeta(weight=Fraction(1, 2) + j, level=4 * chi.conductor**2, character=chi)


def _lattice_sum(a: int, b: int, weight: Callable[[int, int], int], limit: int) -> QExpansion:
    """sum over (x, y) in Z^2 with a x^2 + b y^2 <= limit of weight(x, y) q^(a x^2 + b y^2)."""
    coeffs = [0] * (limit + 1)
    xmax = math.isqrt(limit // a)
    for x in range(-xmax, xmax + 1):
        rest = limit - a * x * x
        ymax = math.isqrt(rest // b)
        for y in range(-ymax, ymax + 1):
            w = weight(x, y)
            if w:
                coeffs[a * x * x + b * y * y] += w
    return QExpansion(None, 1, 0, coeffs)


THETA_AUX: Dict[str, Callable[[int], QExpansion]] = {
    "Theta1": lambda limit: _lattice_sum(1, 1, lambda x, y: 2 * kronecker(-3, x * y) * x * y, limit),
    "Theta2": lambda limit: _lattice_sum(1, 9, lambda x, y: x * x, limit),
    "Theta3": lambda limit: _lattice_sum(1, 9, lambda x, y: 9 * y * y, limit),
    "Theta4": lambda limit: _lattice_sum(1, 2, lambda x, y: kronecker(-4, x * y) * x * y, limit),
    "Theta5": lambda limit: _lattice_sum(1, 8, lambda x, y: (x % 2) * (-1) ** abs(y) * (x * x - 8 * y * y), limit),
    "Theta6": lambda limit: _lattice_sum(1, 8, lambda x, y: (x % 2) * (x * x - 8 * y * y), limit),
    "Theta7": lambda limit: _lattice_sum(1, 2, lambda x, y: (x % 2) * (y % 2) * (x * x - 2 * y * y), limit),
}


def theta_aux(name: str, limit: int) -> QExpansion:
    """Auxiliary binary theta series Theta1 .. Theta7."""
    return THETA_AUX[name](limit)


def rep_diagonal(coeffs: Sequence[int], n: int) -> int:
    """#{x in Z^k : sum coeffs[i] x_i^2 = n}."""
    if not coeffs:
        return 1 if n == 0 else 0
    a, rest = coeffs[0], coeffs[1:]
    total = 0
    x = 0
    while a * x * x <= n:
        total += (1 if x == 0 else 2) * rep_diagonal(rest, n - a * x * x)
        x += 1
    return total


def rankin_cohen(f: QExpansion, k1: Fraction, g: QExpansion, k2: Fraction, ell: int) -> QExpansion:
    """[f, g]_ell with the normalized derivative q d/dq."""
    k1, k2 = Fraction(k1), Fraction(k2)
    derivs_f = [f]
    derivs_g = [g]
    for _ in range(ell):
        derivs_f.append(qx_theta_derivative(derivs_f[-1]))
        derivs_g.append(qx_theta_derivative(derivs_g[-1]))
    total = None
    for r in range(ell + 1):
        w = Fraction((-1) ** r, math.factorial(r) * math.factorial(ell - r))
        w *= _rising(k1 + r, ell - r) * _rising(k2 + ell - r, r)
        term = qx_scale(qx_mul(derivs_f[r], derivs_g[ell - r]), w)
        total = term if total is None else qx_add(total, term)
    return total


def _rising(x: Fraction, m: int) -> Fraction:
    value = Fraction(1)
    for i in range(m):
        value *= x + i
    return value


# Eisenstein series


def eisenstein(kappa: int, chi: DirichletChar, psi: DirichletChar, limit: int) -> QExpansion:
    """E_{kappa,chi,psi} through q^limit."""
    if chi(-1) * psi(-1) != (-1) ** kappa:
        raise ParityObstruction(f"{chi}(-1){psi}(-1) != (-1)^{kappa}")
    coeffs: List = [0] * (limit + 1)
    constant = Fraction(0)
    if chi.is_trivial:
        constant += l_value(1 - kappa, psi)
    if psi.is_trivial and kappa == 1:
        constant += l_value(0, chi)
    for d in range(1, limit + 1):
        w = psi(d) * d ** (kappa - 1)
        if not w:
            continue
        for m in range(1, limit // d + 1):
            c = chi(m)
            if c:
                coeffs[d * m] += 2 * c * w
    coeffs[0] = constant
    return QExpansion(None, 1, 0, coeffs)


def eis_quasi_combo(d: int, limit: int) -> QExpansion:
    """E_{2,chi1,chi1} - d E_{2,chi1,chi1}|V_d in M_2(Gamma0(d))."""
    if d < 2:
        raise HypothesisViolation("the combination needs d >= 2")
    e2 = eisenstein(2, TRIVIAL, TRIVIAL, limit)
    return truncate(qx_add(e2, qx_scale(op_V(e2, d), -d)), limit)


# Hurwitz class numbers


@lru_cache(maxsize=None)
def hurwitz(D: int) -> Fraction:
    """Weighted count of classes of positive definite forms of discriminant -D."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    if D == 0:
        return Fraction(-1, 12)
    if D % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
        a += 1
    return total


def hurwitz_series(limit: int) -> QExpansion:
    """sum H(D) q^D through q^limit."""
    return QExpansion(None, 1, 0, [hurwitz(D) for D in range(limit + 1)])


def hurwitz_combo(l1: int, l2: int, limit: int) -> QExpansion:
    """H|(U_{l1 l2} - l2 U_{l1} V_{l2}) through q^limit."""
    if math.gcd(l1, l2) != 1 or not is_squarefree(l2):
        raise HypothesisViolation(f"need gcd(l1, l2) = 1 and l2 squarefree, got ({l1}, {l2})")
    h = hurwitz_series(l1 * l2 * limit)
    combo = qx_add(op_U(h, l1 * l2), qx_scale(op_V(op_U(h, l1), l2), -l2))
    return truncate(combo, limit)


def hurwitz_combo_meta(l1: int, l2: int) -> FormMeta:
    return FormMeta(weight=Fraction(3, 2), level=4 * radical(l1) * l2, character=DirichletChar(4 * l1 * l2))
