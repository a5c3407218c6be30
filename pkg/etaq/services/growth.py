"""Eisenstein parts of f1 and f2 and the growth functions that bound them."""
import logging
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from etaq.services.characters import DirichletChar, kronecker
from etaq.services.forms import eisenstein
from etaq.services.operators import op_V
from etaq.services.qseries import QExpansion, qx_scale, qx_sum, truncate
from etaq.utils.arith import divisors, factorize

logger = logging.getLogger("growth_service")

CHI_1 = DirichletChar(1)
CHI_12 = DirichletChar(12)
CHI_M3 = DirichletChar(-3)
CHI_M4 = DirichletChar(-4)

# The four weight-2 Eisenstein series behind E1 and E2, as (chi, psi) with
# coefficient 2 * sum_{d|n} chi(n/d) psi(d) d.
BASIS: List[Tuple[DirichletChar, DirichletChar]] = [
    (CHI_1, CHI_12),
    (CHI_M3, CHI_M4),
    (CHI_M4, CHI_M3),
    (CHI_12, CHI_1),
]

# weights on the half-sums sum_{d|n/v} chi(n/(vd)) psi(d) d, keyed by the dilation v
E_WEIGHTS: Dict[str, Dict[int, Tuple[Fraction, ...]]] = {
    "E1": {
        1: (Fraction(1, 2), Fraction(1, 2), Fraction(2), Fraction(2)),
        3: (Fraction(-3, 2), Fraction(9, 2), Fraction(6), Fraction(-18)),
    },
    "E2": {
        1: (Fraction(-1, 2), Fraction(-1, 2), Fraction(1), Fraction(1)),
        3: (Fraction(3, 2), Fraction(-9, 2), Fraction(3), Fraction(-9)),
        2: (Fraction(1), Fraction(-1), Fraction(4), Fraction(-4)),
        6: (Fraction(-3), Fraction(-9), Fraction(12), Fraction(36)),
    },
}


def _weights(which: str) -> Dict[int, Tuple[Fraction, ...]]:
    if which not in E_WEIGHTS:
        raise ValueError(f"unknown Eisenstein part {which!r}")
    return E_WEIGHTS[which]


# Divisor-sum definitions


def _half_sums(n: int) -> Tuple[int, ...]:
    ds = divisors(n)
    return tuple(sum(chi(n // d) * psi(d) * d for d in ds) for chi, psi in BASIS)


def eisenstein_definition(which: str, n: int) -> Fraction:
    """n-th coefficient of E1 or E2 by direct divisor sums; the constant term is 1."""
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for v, w in _weights(which).items():
        if n % v == 0:
            total += sum(wi * s for wi, s in zip(w, _half_sums(n // v)))
    return total


def eisenstein_e1_definition(limit: int) -> QExpansion:
    return QExpansion(None, 1, 0, [eisenstein_definition("E1", n) for n in range(limit + 1)])


def eisenstein_e2_definition(limit: int) -> QExpansion:
    return QExpansion(None, 1, 0, [eisenstein_definition("E2", n) for n in range(limit + 1)])


# Eisenstein combinations


def eisenstein_combination(which: str, limit: int) -> QExpansion:
    """E1 or E2 as a linear combination of E_{2,chi,psi}|V_v."""
    base = [eisenstein(2, chi, psi, limit) for chi, psi in BASIS]
    terms = []
    for v, w in _weights(which).items():
        for series, wi in zip(base, w):
            terms.append(qx_scale(op_V(series, v), wi / 2))
    return truncate(qx_sum(terms), limit)


def eisenstein_e1_combination(limit: int) -> QExpansion:
    return eisenstein_combination("E1", limit)


def eisenstein_e2_combination(limit: int) -> QExpansion:
    return eisenstein_combination("E2", limit)


# Closed forms


def geometric_product(m: int) -> int:
    """prod_{p | m} (1 - ((3/p)p)^(nu+1)) / (1 - (3/p)p) for m coprime to 6."""
    value = 1
    for p, nu in factorize(m).items():
        x = kronecker(12, p) * p
        value *= (1 - x ** (nu + 1)) // (1 - x)
    return value


def _closed_half_sums(n: int) -> Tuple[int, ...]:
    """The four half-sums at n = 2^a 3^b m from their multiplicative shape."""
    a = b = 0
    m = n
    while m % 2 == 0:
        m //= 2
        a += 1
    while m % 3 == 0:
        m //= 3
        b += 1
    prod = geometric_product(m)
    sign = (-1) ** (a + b)
    return (
        prod,
        sign * 3**b * kronecker(-3, m) * prod,
        sign * 2**a * kronecker(-4, m) * prod,
        2**a * 3**b * kronecker(12, m) * prod,
    )


def eisenstein_closed_form(which: str, n: int) -> Fraction:
    """n-th coefficient of E1 or E2 from the factorization n = 2^a 3^b m."""
    if n < 1:
        raise ValueError("n must be positive")
    total = Fraction(0)
    for v, w in _weights(which).items():
        if n % v == 0:
            total += sum(wi * s for wi, s in zip(w, _closed_half_sums(n // v)))
    return total


# Growth functions


def growth_F(p: int, nu: int) -> Fraction:
    """Lower bound for the p-part of the Eisenstein coefficient."""
    if p == 2:
        return Fraction(2 ** (nu + 2) - 1, 3)
    if p == 3:
        return Fraction(1)
    if p % 12 in (1, 11):
        return Fraction(p ** (nu + 1) - 1, p - 1)
    if nu % 2 == 0:
        return Fraction(p ** (nu + 1) + 1, p + 1)
    return Fraction(p ** (nu + 1) - 1, p + 1)


def _local_squared(p: int, nu: int, which: str) -> Fraction:
    if which == "G2" and p == 2:
        top = Fraction(2 ** (nu + 1) - 1)
    else:
        top = growth_F(p, nu)
    return top * top / ((nu + 1) ** 2 * p**nu)


def growth_G_squared(which: str, n: int) -> Fraction:
    """G1(n)^2 or G2(n)^2 as an exact rational."""
    if which not in ("G1", "G2"):
        raise ValueError(f"unknown growth function {which!r}")
    if n < 1:
        raise ValueError("n must be positive")
    value = Fraction(1)
    for p, nu in factorize(n).items():
        value *= _local_squared(p, nu, which)
    return value


def growth_f_nonneg(alpha: Fraction, nu: int, x: int) -> bool:
    """x^(nu+1) - 1 - alpha (nu+1)(x+1) x^(nu/2) >= 0, decided by squaring both sides."""
    if x < 3:
        raise ValueError("x must be at least 3")
    alpha = Fraction(alpha)
    lhs = Fraction(x ** (nu + 1) - 1) ** 2
    rhs = alpha * alpha * (nu + 1) ** 2 * (x + 1) ** 2 * x**nu
    return lhs >= rhs


# (alpha, nu, x) with f_{alpha,nu}(x) >= 0 used to bound the exponents in G1 and G2
F_ALPHA_CASES: List[Tuple[Fraction, int, int]] = [
    (Fraction(21, 10), 1, 20),
    (Fraction(21, 10), 2, 8),
    (Fraction(21, 10), 3, 5),
    (Fraction(10), 1, 402),
    (Fraction(10), 2, 31),
    (Fraction(10), 3, 13),
    (Fraction(10), 4, 8),
    (Fraction(10), 5, 6),
    (Fraction(10), 6, 5),
]


def scan_growth(
    which: str, start: int, limit: int, modulus: int = 3, residue: int = 1
) -> Tuple[Optional[Fraction], Optional[int]]:
    """Minimum of G(n)^2 over start < n <= limit with n = residue (mod modulus)."""
    t0 = time.time()
    best: Optional[Fraction] = None
    best_n: Optional[int] = None
    first = start + 1 + (residue - start - 1) % modulus
    for n in range(first, limit + 1, modulus):
        value = growth_G_squared(which, n)
        if best is None or value < best:
            best, best_n = value, n
    logger.info(f"{which} scan over ({start}, {limit}] done in {time.time() - t0:.2f}s, min at {best_n}")
    return best, best_n
