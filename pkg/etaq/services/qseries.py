"""Truncated q-expansions on the 1/24 exponent grid.

A QExpansion stores its coefficients densely on the grid (1/den)Z with
den | 24, which keeps integer-grid series compact while start24/trunc24
expose the canonical 1/24 units. Coefficients are held as two parallel
lists of exact rationals (rational part and sqrt(d) part).
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from etaq.services.scalars import QuadScalar, Rational, check_field_tag, common_field
from etaq.utils.errors import FractionalGrid, NonInvertibleLeadingTerm, SpecParseError

logger = logging.getLogger("qseries_service")


class QExpansion:
    """Coefficient i is attached to q^((start + i)/den); exponents >= trunc are unknown."""

    __slots__ = ("d", "den", "start", "a", "b")

    def __init__(self, d: Optional[int], den: int, start: int, a: List[Rational], b: Optional[List[Rational]] = None):
        if 24 % den:
            raise ValueError(f"grid denominator {den} does not divide 24")
        if not a:
            raise ValueError("empty expansion: start must lie below trunc")
        check_field_tag(d)
        if d is None:
            b = None
        elif b is None:
            b = [0] * len(a)
        elif len(b) != len(a):
            raise ValueError("coefficient parts differ in length")
        self.d = d
        self.den = den
        self.start = start
        self.a = a
        self.b = b

    # grid bookkeeping

    @property
    def trunc(self) -> int:
        return self.start + len(self.a)

    @property
    def start24(self) -> int:
        return self.start * (24 // self.den)

    @property
    def trunc24(self) -> int:
        return self.trunc * (24 // self.den)

    @property
    def coeffs(self) -> List[QuadScalar]:
        return [self._scalar(i) for i in range(len(self.a))]

    def _scalar(self, i: int) -> QuadScalar:
        if self.b is None:
            return QuadScalar(self.a[i])
        return QuadScalar(self.a[i], self.b[i], self.d)

    def _nonzero(self, i: int) -> bool:
        return bool(self.a[i]) or (self.b is not None and bool(self.b[i]))

    def coeff24(self, k24: int) -> QuadScalar:
        """Coefficient of q^(k24/24)."""
        if k24 >= self.trunc24:
            raise IndexError(f"coefficient at {k24}/24 is beyond the truncation {self.trunc24}/24")
        step = 24 // self.den
        if k24 < self.start24 or k24 % step:
            return QuadScalar(0)
        return self._scalar(k24 // step - self.start)

    def __getitem__(self, n: int) -> QuadScalar:
        """Coefficient of q^n for integer n."""
        return self.coeff24(24 * n)

    def known_through(self) -> Fraction:
        """Largest exponent bound e such that every coefficient below e is known."""
        return Fraction(self.trunc, self.den)

    def support(self) -> Iterator[Tuple[Fraction, QuadScalar]]:
        for i in range(len(self.a)):
            if self._nonzero(i):
                yield Fraction(self.start + i, self.den), self._scalar(i)

    def is_integer_grid(self) -> bool:
        if self.den == 1:
            return True
        return all((self.start + i) % self.den == 0 for i in range(len(self.a)) if self._nonzero(i))

    def is_zero(self) -> bool:
        return not any(self._nonzero(i) for i in range(len(self.a)))

    def integer_coefficients(self, limit: int) -> List[QuadScalar]:
        """Coefficients of q^0 .. q^limit."""
        return [self[n] for n in range(limit + 1)]

    # operator sugar

    def __add__(self, other):
        return qx_add(self, other)

    def __sub__(self, other):
        return qx_add(self, qx_scale(other, -1))

    def __neg__(self):
        return qx_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return qx_mul(self, other)
        return qx_scale(self, other)

    def __rmul__(self, other):
        return qx_scale(self, other)

    def __pow__(self, e: int):
        return qx_pow(self, e)

    def __repr__(self):
        terms = [f"({c})*q^{e}" for e, c in list(self.support())[:6]]
        return f"QExpansion(d={self.d}, {' + '.join(terms) or '0'} + O(q^{self.known_through()}))"


def series_from_coefficients(coeffs: Sequence, start: int = 0, den: int = 1, d: Optional[int] = None) -> QExpansion:
    """Build an expansion from rationals or QuadScalars on the grid (1/den)Z."""
    scalars = [QuadScalar.coerce(c) for c in coeffs]
    for c in scalars:
        d = common_field(d, c.d)
    a, b = [], []
    for c in scalars:
        a.append(_plain(c.a))
        b.append(_plain(c.b))
    return QExpansion(d, den, start, a, b if d is not None else None)


def monomial(exponent24: int, trunc24: int, value: Rational = 1) -> QExpansion:
    """value * q^(exponent24/24) known below trunc24/24."""
    den = 24 // math.gcd(24, exponent24, trunc24)
    step = 24 // den
    a = [0] * ((trunc24 - exponent24) // step)
    a[0] = value
    return QExpansion(None, den, exponent24 // step, a)


def _plain(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def regrid(f: QExpansion, den: int) -> QExpansion:
    """Same series on the finer grid (1/den)Z."""
    if den == f.den:
        return f
    if den % f.den:
        raise ValueError(f"grid 1/{den} does not refine 1/{f.den}")
    factor = den // f.den
    size = len(f.a) * factor
    a = [0] * size
    a[::factor] = f.a
    b = None
    if f.b is not None:
        b = [0] * size
        b[::factor] = f.b
    return QExpansion(f.d, den, f.start * factor, a, b)


def normalize_grid(f: QExpansion) -> QExpansion:
    """Coarsest grid carrying every nonzero coefficient."""
    g = 0
    for i in range(len(f.a)):
        if f._nonzero(i):
            g = math.gcd(g, f.start + i)
    g = math.gcd(g, f.den)
    if g <= 1:
        return f
    # positions are multiples of g; new exponent units are g/den
    first = -((-f.start) // g)
    last = (f.trunc - 1) // g
    new_den = f.den // g
    if last < first:
        return QExpansion(f.d, new_den, first, [0], None if f.b is None else [0])
    idx = range(first * g - f.start, last * g - f.start + 1, g)
    a = [f.a[i] for i in idx]
    b = None if f.b is None else [f.b[i] for i in idx]
    return QExpansion(f.d, new_den, first, a, b)


def _aligned(f: QExpansion, g: QExpansion) -> Tuple[QExpansion, QExpansion, Optional[int]]:
    den = f.den * g.den // math.gcd(f.den, g.den)
    return regrid(f, den), regrid(g, den), common_field(f.d, g.d)


def qx_scale(f: QExpansion, c) -> QExpansion:
    """Multiply every coefficient by a scalar."""
    c = QuadScalar.coerce(c)
    d = common_field(f.d, c.d)
    if d is None:
        return QExpansion(None, f.den, f.start, [_plain(x * c.a) for x in f.a])
    fb = f.b if f.b is not None else [0] * len(f.a)
    a = [_plain(x * c.a + d * y * c.b) for x, y in zip(f.a, fb)]
    b = [_plain(x * c.b + y * c.a) for x, y in zip(f.a, fb)]
    return QExpansion(d, f.den, f.start, a, b)


def qx_add(f: QExpansion, g: QExpansion) -> QExpansion:
    """Termwise sum, truncated at the smaller truncation."""
    f, g, d = _aligned(f, g)
    start = min(f.start, g.start)
    trunc = min(f.trunc, g.trunc)
    a = [0] * (trunc - start)
    b = [0] * (trunc - start) if d is not None else None
    for h in (f, g):
        lo = h.start - start
        hi = min(h.trunc, trunc) - start
        for i in range(lo, hi):
            a[i] += h.a[i - lo]
            if b is not None and h.b is not None:
                b[i] += h.b[i - lo]
    return QExpansion(d, f.den, start, a, b)


def qx_sum(series: Sequence[QExpansion]) -> QExpansion:
    total = series[0]
    for s in series[1:]:
        total = qx_add(total, s)
    return total


def _terms(h: QExpansion) -> List[Tuple[int, Rational, Rational]]:
    hb = h.b
    return [(j, h.a[j], hb[j] if hb is not None else 0) for j in range(len(h.a)) if h._nonzero(j)]


def qx_mul(f: QExpansion, g: QExpansion) -> QExpansion:
    """Cauchy product; zero coefficients are skipped on both sides."""
    f, g, d = _aligned(f, g)
    start = f.start + g.start
    size = min(f.start + g.trunc, g.start + f.trunc) - start
    a = [0] * size
    b = [0] * size if d is not None else None
    g_terms = _terms(g)
    for i, x, y in _terms(f):
        if i >= size:
            break
        if b is None:
            for j, u, _ in g_terms:
                k = i + j
                if k >= size:
                    break
                a[k] += x * u
        else:
            for j, u, v in g_terms:
                k = i + j
                if k >= size:
                    break
                a[k] += x * u + d * y * v
                b[k] += x * v + y * u
    return QExpansion(d, f.den, start, a, b)


def qx_invert(f: QExpansion) -> QExpansion:
    """Multiplicative inverse; the leading stored coefficient must be nonzero."""
    if not f._nonzero(0):
        raise NonInvertibleLeadingTerm(f"leading coefficient at q^{Fraction(f.start, f.den)} is zero")
    size = len(f.a)
    d = f.d
    lead_inv = 1 / f._scalar(0)
    rest = [t for t in _terms(f) if t[0] > 0]
    a = [0] * size
    b = [0] * size if d is not None else None
    a[0] = _plain(lead_inv.a)
    if b is not None:
        b[0] = _plain(lead_inv.b)
    for k in range(1, size):
        sa = 0
        sb = 0
        for i, x, y in rest:
            if i > k:
                break
            if b is None:
                sa += x * a[k - i]
            else:
                sa += x * a[k - i] + d * y * b[k - i]
                sb += x * b[k - i] + y * a[k - i]
        if b is None:
            a[k] = _plain(-sa * lead_inv.a)
        else:
            value = -(QuadScalar(sa, sb, d) * lead_inv)
            a[k] = _plain(value.a)
            b[k] = _plain(value.b)
    return QExpansion(d, f.den, -f.start, a, b)


def qx_pow(f: QExpansion, e: int) -> QExpansion:
    """f^e by binary exponentiation; negative e inverts first."""
    if e < 0:
        return qx_pow(qx_invert(f), -e)
    result = QExpansion(None, f.den, 0, [1] + [0] * (len(f.a) - 1))
    base = f
    while e:
        if e & 1:
            result = qx_mul(result, base)
        e >>= 1
        if e:
            base = qx_mul(base, base)
    return result


def qx_theta_derivative(f: QExpansion) -> QExpansion:
    """q d/dq: the coefficient of q^e is multiplied by e."""
    a = [_plain(x * Fraction(f.start + i, f.den)) for i, x in enumerate(f.a)]
    b = None
    if f.b is not None:
        b = [_plain(y * Fraction(f.start + i, f.den)) for i, y in enumerate(f.b)]
    return QExpansion(f.d, f.den, f.start, a, b)


def truncate(f: QExpansion, limit: int) -> QExpansion:
    """Keep integer exponents up to and including limit."""
    trunc = (limit + 1) * f.den
    if trunc >= f.trunc:
        return f
    size = trunc - f.start
    return QExpansion(f.d, f.den, f.start, f.a[:size], None if f.b is None else f.b[:size])


# Pochhammer symbols and C-series


def pentagonal_terms(j: int, limit: int) -> List[Tuple[int, int]]:
    """(exponent, sign) of (q^j;q^j)_inf up to q^limit, ascending."""
    terms = [(0, 1)]
    k = 1
    while True:
        e1 = j * k * (3 * k - 1) // 2
        if e1 > limit:
            break
        sign = -1 if k % 2 else 1
        terms.append((e1, sign))
        e2 = j * k * (3 * k + 1) // 2
        if e2 <= limit:
            terms.append((e2, sign))
        k += 1
    return terms


def cube_terms(j: int, limit: int) -> List[Tuple[int, int]]:
    """(exponent, coefficient) of (q^j;q^j)_inf^3 = sum (-1)^n (2n+1) q^(j n(n+1)/2)."""
    terms = []
    n = 0
    while j * n * (n + 1) // 2 <= limit:
        terms.append((j * n * (n + 1) // 2, (-1) ** n * (2 * n + 1)))
        n += 1
    return terms


def pochhammer(j: int, trunc24: int) -> QExpansion:
    """(q^j;q^j)_inf known below q^(trunc24/24)."""
    if trunc24 <= 0 or trunc24 % 24:
        raise ValueError("trunc24 must be a positive multiple of 24")
    size = trunc24 // 24
    a = [0] * size
    for e, s in pentagonal_terms(j, size - 1):
        a[e] = s
    return QExpansion(None, 1, 0, a)


def cube_pochhammer(j: int, trunc24: int) -> QExpansion:
    """(q^j;q^j)_inf^3 known below q^(trunc24/24)."""
    if trunc24 <= 0 or trunc24 % 24:
        raise ValueError("trunc24 must be a positive multiple of 24")
    size = trunc24 // 24
    a = [0] * size
    for e, c in cube_terms(j, size - 1):
        a[e] = c
    return QExpansion(None, 1, 0, a)


def sparse_multiply(coeffs: List[int], terms: List[Tuple[int, int]]) -> List[int]:
    size = len(coeffs)
    out = [0] * size
    for e, s in terms:
        if e >= size:
            break
        out[e:] = [x + s * y for x, y in zip(out[e:], coeffs)]
    return out


def sparse_divide(coeffs: List[int], terms: List[Tuple[int, int]]) -> List[int]:
    """Divide by a sparse series with constant term 1."""
    out = list(coeffs)
    rest = terms[1:]
    for n in range(1, len(out)):
        acc = out[n]
        for e, s in rest:
            if e > n:
                break
            acc -= s * out[n - e]
        out[n] = acc
    return out


@dataclass(frozen=True)
class EtaSpec:
    """Sorted (delta, r) pairs of an eta-quotient."""

    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        deltas = [delta for delta, _ in self.factors]
        if deltas != sorted(set(deltas)):
            raise ValueError("deltas must be distinct and increasing")
        if any(delta < 1 or r == 0 for delta, r in self.factors):
            raise ValueError("deltas must be positive and exponents nonzero")

    @classmethod
    def of(cls, mapping: dict) -> "EtaSpec":
        return cls(tuple(sorted((int(k), int(v)) for k, v in mapping.items() if v)))

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def offset24(self) -> int:
        return sum(delta * r for delta, r in self.factors)

    def scaled(self, ell: int) -> "EtaSpec":
        """Spec of f(ell z)."""
        return EtaSpec(tuple((delta * ell, r) for delta, r in self.factors))

    def __str__(self):
        return " ".join(f"{delta}^{r}" for delta, r in self.factors)


_TOKEN = re.compile(r"(\d+)\^(-?\d+)$")


def parse_eta_spec(text: str) -> EtaSpec:
    """Parse "1^-1 3^3 4^2"; errors carry the offending position."""
    factors = {}
    for match in re.finditer(r"\S+", text):
        token = _TOKEN.match(match.group())
        if not token:
            raise SpecParseError(f"expected base^exponent, got {match.group()!r}", match.start())
        delta, r = int(token.group(1)), int(token.group(2))
        if delta < 1:
            raise SpecParseError("base must be positive", match.start())
        if delta in factors:
            raise SpecParseError(f"repeated base {delta}", match.start())
        if r:
            factors[delta] = r
    if not factors:
        raise SpecParseError("empty eta spec", len(text))
    return EtaSpec.of(factors)


def c_coefficients(spec: EtaSpec, limit: int) -> List[int]:
    """C(0..limit) of prod (q^delta;q^delta)^r as Python ints."""
    coeffs = [1] + [0] * limit
    for delta, r in spec.factors:
        cubes, singles = divmod(abs(r), 3)
        steps = [cube_terms(delta, limit)] * cubes + [pentagonal_terms(delta, limit)] * singles
        for terms in steps:
            if r > 0:
                coeffs = sparse_multiply(coeffs, terms)
            else:
                coeffs = sparse_divide(coeffs, terms)
    return coeffs


def c_series(spec: EtaSpec, limit: int) -> QExpansion:
    """Integer-grid C-series through q^limit, without the eta prefactor."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    logger.debug(f"Expanding C-series {spec} through q^{limit}")
    return QExpansion(None, 1, 0, c_coefficients(spec, limit))
