"""The eight CM newforms g1..g8: theta constructions and closed-form coefficients."""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Tuple

from etaq.models.meta import FormMeta
from etaq.services.characters import DirichletChar, kronecker
from etaq.services.forms import theta, theta_aux, theta_unary
from etaq.services.operators import op_sieve, op_V
from etaq.services.qseries import QExpansion, qx_add, qx_mul, qx_scale, qx_sum, truncate
from etaq.services.scalars import QuadScalar, squared_abs_at_most
from etaq.utils.arith import divisor_count, factorize, is_square
from etaq.utils.errors import UnknownIdentifier

SQRT_M2 = QuadScalar.sqrt(-2)  # i*sqrt(2)
SQRT_2 = QuadScalar.sqrt(2)
I = QuadScalar.sqrt(-1)
HALF = Fraction(1, 2)


def _g12(sign: int, limit: int) -> QExpansion:
    big_theta = theta(limit)
    theta9 = op_V(big_theta, 9)
    th = theta_unary(-3, 1, limit)
    first = qx_scale(qx_mul(qx_add(big_theta, qx_scale(theta9, -1)), th), SQRT_M2 * Fraction(sign, 4))
    second = qx_scale(qx_mul(th, theta9), HALF)
    return truncate(qx_add(first, second), limit)


def _g3(limit: int) -> QExpansion:
    big_theta = theta(limit)
    th = theta_unary(-3, 1, limit)
    A = qx_mul(op_V(th, 4), big_theta)
    B = qx_mul(th, op_V(big_theta, 4))
    return truncate(qx_sum([
        op_sieve(A, 12, 1),
        qx_scale(op_sieve(B, 12, 1), HALF),
        qx_scale(op_sieve(A, 12, 5), SQRT_M2 * HALF),
        qx_scale(op_sieve(B, 12, 5), SQRT_M2 * Fraction(1, 4)),
    ]), limit)


def _g4(limit: int) -> QExpansion:
    return qx_sum([
        qx_scale(theta_aux("Theta1", limit), Fraction(-1, 4)),
        qx_scale(theta_aux("Theta2", limit), HALF),
        qx_scale(theta_aux("Theta3", limit), -HALF),
    ])


def _g5(limit: int) -> QExpansion:
    first = qx_scale(qx_mul(theta_unary(-8, 1, limit), op_V(theta(limit), 8)), HALF)
    second = qx_scale(qx_mul(theta_unary(8, 0, limit), op_V(theta_unary(-4, 1, limit), 2)), SQRT_2 * HALF)
    return truncate(qx_add(first, second), limit)


def _g6(limit: int) -> QExpansion:
    P = qx_mul(theta_unary(-4, 1, limit), op_V(theta(limit), 2))
    return truncate(qx_add(qx_scale(op_sieve(P, 8, 1), HALF), qx_scale(op_sieve(P, 8, 3), I * HALF)), limit)


def _g7(limit: int) -> QExpansion:
    return qx_add(qx_scale(theta_aux("Theta4", limit), SQRT_2), qx_scale(theta_aux("Theta5", limit), HALF))


def _g8(limit: int) -> QExpansion:
    return qx_add(qx_scale(theta_aux("Theta6", limit), HALF), qx_scale(theta_aux("Theta7", limit), -HALF))


# Closed forms


def _reps(n: int, a: int, b: int, positive: bool = True) -> Iterator[Tuple[int, int]]:
    """(x, y) with a x^2 + b y^2 = n; x, y >= 1 when positive, else all of Z^2."""
    xmax = math.isqrt(n // a)
    xs = range(1, xmax + 1) if positive else range(-xmax, xmax + 1)
    for x in xs:
        rest = n - a * x * x
        if rest % b or not is_square(rest // b):
            continue
        y = math.isqrt(rest // b)
        if positive:
            if y:
                yield x, y
        else:
            yield x, y
            if y:
                yield x, -y


def _square_root(n: int) -> Optional[int]:
    return math.isqrt(n) if is_square(n) else None


def _c12_closed(sign: int, n: int) -> QuadScalar:
    first = sum(kronecker(-3, y) * y for x, y in _reps(n, 1, 1, positive=False) if x % 3)
    second = sum(kronecker(-3, x) * x for x, y in _reps(n, 1, 9, positive=False))
    return SQRT_M2 * Fraction(sign * first, 4) + Fraction(second, 2)


def gamma1_closed(n: int) -> int:
    """Integer gamma1(n) with c1(n) = sqrt(-2) gamma1(n) for n = 2 (mod 3), gamma1(n) otherwise."""
    if n % 3 == 0:
        return 0
    if n % 3 == 2:
        return sum(kronecker(-3, y) * y for _, y in _reps(n, 1, 1))
    s = _square_root(n)
    value = kronecker(-3, s) * s if s else 0
    return value + 2 * sum(kronecker(-3, x) * x for x, _ in _reps(n, 1, 9))


def _c3_closed(n: int) -> QuadScalar:
    if n % 12 == 1:
        s = _square_root(n)
        value = kronecker(-3, s) * s if s else 0
        value += 4 * sum(kronecker(-3, x) * x for x, _ in _reps(n, 4, 9))
        value += 2 * sum(kronecker(-3, x) * x for x, _ in _reps(n, 1, 36))
        return QuadScalar(value)
    if n % 12 == 5:
        value = 2 * sum(kronecker(-3, x) * x for x, _ in _reps(n, 4, 1))
        value += sum(kronecker(-3, x) * x for x, _ in _reps(n, 1, 4))
        return SQRT_M2 * value
    return QuadScalar(0)


def _c4_closed(n: int) -> QuadScalar:
    if n % 3 == 1:
        value = n if is_square(n) else 0
        return QuadScalar(value + 2 * sum(x * x - 9 * y * y for x, y in _reps(n, 1, 9)))
    if n % 3 == 2:
        return QuadScalar(-2 * sum(kronecker(-3, x * y) * x * y for x, y in _reps(n, 1, 1)))
    return QuadScalar(0)


def _c5_closed(n: int) -> QuadScalar:
    if n % 8 == 1:
        s = _square_root(n)
        value = kronecker(-2, s) * s if s else 0
        return QuadScalar(value + 2 * sum(kronecker(-2, x) * x for x, _ in _reps(n, 1, 8)))
    if n % 8 == 3:
        value = sum(kronecker(2, x) * kronecker(-4, y) * y for x, y in _reps(n, 1, 2))
        return SQRT_2 * (2 * value)
    return QuadScalar(0)


def _c6_closed(n: int) -> QuadScalar:
    if n % 8 == 1:
        s = _square_root(n)
        value = kronecker(-1, s) * s if s else 0
        return QuadScalar(value + 2 * sum(kronecker(-1, x) * x for x, _ in _reps(n, 1, 2)))
    if n % 8 == 3:
        return I * (2 * sum(kronecker(-1, x) * x for x, _ in _reps(n, 1, 2)))
    return QuadScalar(0)


def _c7_closed(n: int) -> QuadScalar:
    if n % 8 == 1:
        value = n if is_square(n) else 0
        return QuadScalar(value + 2 * sum((-1) ** y * (x * x - 8 * y * y) for x, y in _reps(n, 1, 8)))
    if n % 8 == 3:
        return SQRT_2 * (4 * sum(kronecker(-1, x * y) * x * y for x, y in _reps(n, 1, 2)))
    return QuadScalar(0)


def _c8_closed(n: int) -> QuadScalar:
    if n % 8 == 1:
        value = n if is_square(n) else 0
        return QuadScalar(value + 2 * sum(x * x - 8 * y * y for x, y in _reps(n, 1, 8)))
    if n % 8 == 3:
        return QuadScalar(-2 * sum(x * x - 2 * y * y for x, y in _reps(n, 1, 2)))
    return QuadScalar(0)


@dataclass(frozen=True)
class NewformId:
    name: str
    meta: FormMeta
    field: Optional[int]
    build: Callable[[int], QExpansion]
    closed: Callable[[int], QuadScalar]


def _space(weight: int, level: int, D: int) -> FormMeta:
    return FormMeta(weight=weight, level=level, character=DirichletChar(D), is_cuspidal=True)


NEWFORMS: Dict[str, NewformId] = {
    "g1": NewformId("g1", _space(2, 36, 12), -2, lambda limit: _g12(1, limit), lambda n: _c12_closed(1, n)),
    "g2": NewformId("g2", _space(2, 36, 12), -2, lambda limit: _g12(-1, limit), lambda n: _c12_closed(-1, n)),
    "g3": NewformId("g3", _space(2, 144, 12), -2, _g3, _c3_closed),
    "g4": NewformId("g4", _space(3, 36, -4), None, _g4, _c4_closed),
    "g5": NewformId("g5", _space(2, 256, 1), 2, _g5, _c5_closed),
    "g6": NewformId("g6", _space(2, 64, 8), -1, _g6, _c6_closed),
    "g7": NewformId("g7", _space(3, 128, -8), 2, _g7, _c7_closed),
    "g8": NewformId("g8", _space(3, 32, -8), None, _g8, _c8_closed),
}


def get_newform(name: str) -> NewformId:
    try:
        return NEWFORMS[name]
    except KeyError:
        raise UnknownIdentifier(f"unknown newform {name!r}") from None


def newform_expand(name: str, limit: int) -> QExpansion:
    """Series of the newform through q^limit from its theta construction."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return get_newform(name).build(limit)


def newform_coeff_closed(name: str, n: int) -> QuadScalar:
    """n-th coefficient from the case-split lattice sums."""
    if n < 1:
        raise ValueError("n must be positive")
    return get_newform(name).closed(n)


def newform_closed_series(name: str, limit: int) -> QExpansion:
    closed = get_newform(name).closed
    coeffs = [QuadScalar(0)] + [closed(n) for n in range(1, limit + 1)]
    a = [c.a for c in coeffs]
    b = [c.b for c in coeffs]
    field = get_newform(name).field
    return QExpansion(field, 1, 0, a, b if field is not None else None)


def hecke_recursion_holds(name: str, limit: int, max_prime: int = 50) -> bool:
    """Prime-power recursion for p not dividing the level and multiplicativity on coprime pairs."""
    form = get_newform(name)
    f = newform_expand(name, limit)
    kappa = int(form.meta.weight)
    chi = form.meta.character
    for p in (p for p in range(2, max_prime + 1) if factorize(p) == {p: 1}):
        if form.meta.level % p == 0:
            continue
        q = p * p
        while q <= limit:
            if f[q] != f[p] * f[q // p] - f[q // (p * p)] * (chi(p) * p ** (kappa - 1)):
                return False
            q *= p
    for m in range(2, limit + 1):
        for n in range(m + 1, limit // m + 1):
            if math.gcd(m, n) == 1 and f[m * n] != f[m] * f[n]:
                return False
    return True


def deligne_bound_holds(name: str, limit: int) -> bool:
    """|c(n)|^2 <= d(n)^2 n^(kappa-1) for every embedding."""
    form = get_newform(name)
    f = newform_expand(name, limit)
    kappa = int(form.meta.weight)
    return all(
        squared_abs_at_most(f[n], Fraction(divisor_count(n) ** 2 * n ** (kappa - 1)))
        for n in range(1, limit + 1)
    )
