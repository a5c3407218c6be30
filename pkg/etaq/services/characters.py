"""Kronecker-symbol Dirichlet characters and their special L-values."""
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from sympy import Rational, bernoulli

from etaq.utils.arith import factorize
from etaq.utils.errors import InvalidDiscriminant


def jacobi(n: int, m: int) -> int:
    """Jacobi symbol (n/m) for odd positive m."""
    assert m > 0 and m & 1
    acc = 1
    while True:
        n %= m
        if n == 0:
            return 1 if m == 1 else 0
        while not (n & 1):
            n >>= 1
            if (m & 7) not in {1, 7}:
                acc *= -1
        if n == 1:
            return acc
        if (n & 3) == 3 and (m & 3) == 3:
            acc *= -1
        n, m = m, n


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) with the usual conventions at n <= 0 and n even."""
    if D == 0:
        raise InvalidDiscriminant("kronecker symbol needs D != 0")
    if n == 0:
        return 1 if D in (1, -1) else 0
    acc = 1
    if n < 0:
        n = -n
        if D < 0:
            acc = -acc
    twos = 0
    while not (n & 1):
        n >>= 1
        twos += 1
    if twos:
        if not (D & 1):
            return 0
        if twos & 1 and D % 8 in (3, 5):
            acc = -acc
    return acc * jacobi(D, n)


def squarefree_part(D: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    core = 1
    for p, e in factorize(abs(D)).items():
        if e % 2:
            core *= p
    return core if D > 0 else -core


def fundamental_discriminant(D: int) -> int:
    """Discriminant of Q(sqrt(D)); 1 when D is a square."""
    s = squarefree_part(D)
    if s == 1:
        return 1
    return s if s % 4 == 1 else 4 * s


class DirichletChar:
    """chi_D(n) = (D/n); D = 1 is the trivial character."""

    __slots__ = ("D", "conductor", "_table")

    def __init__(self, D: int = 1):
        if D == 0:
            raise InvalidDiscriminant("character discriminant must be nonzero")
        self.D = D
        self.conductor = abs(fundamental_discriminant(D))
        self._table: Optional[list] = None

    @classmethod
    def trivial(cls) -> "DirichletChar":
        return cls(1)

    @classmethod
    def parse(cls, text: str) -> "DirichletChar":
        if not text.startswith("chi_"):
            raise ValueError(f"not a character label: {text!r}")
        return cls(int(text[4:]))

    @property
    def fundamental(self) -> int:
        return fundamental_discriminant(self.D)

    @property
    def is_trivial(self) -> bool:
        return self.fundamental == 1

    @property
    def period(self) -> int:
        return abs(self.D) if self.D % 4 in (0, 1) else 4 * abs(self.D)

    def __call__(self, n: int) -> int:
        if n <= 0:
            return kronecker(self.D, n)
        if self._table is None:
            self._table = [kronecker(self.D, a) for a in range(self.period)]
        return self._table[n % self.period]

    def parity(self) -> str:
        return char_parity(self)

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        return DirichletChar(fundamental_discriminant(self.fundamental * other.fundamental))

    def __pow__(self, e: int) -> "DirichletChar":
        return DirichletChar(self.fundamental if e % 2 else 1)

    def __eq__(self, other):
        return isinstance(other, DirichletChar) and self.fundamental == other.fundamental

    def __hash__(self):
        return hash(self.fundamental)

    def __str__(self):
        return f"chi_{self.fundamental}"

    __repr__ = __str__


TRIVIAL = DirichletChar(1)


def char_conductor(c: DirichletChar) -> int:
    return c.conductor


def char_parity(c: DirichletChar) -> str:
    return "even" if kronecker(c.D, -1) == 1 else "odd"


@lru_cache(maxsize=None)
def _gen_bernoulli(k: int, D: int) -> Fraction:
    chi = DirichletChar(D)
    N = chi.conductor
    total = sum(chi(a) * bernoulli(k, Rational(a, N)) for a in range(1, N + 1))
    value = Rational(N) ** (k - 1) * total
    return Fraction(int(value.p), int(value.q))


def gen_bernoulli(k: int, c: DirichletChar) -> Fraction:
    """B_{k,chi} = N^(k-1) sum_{a=1}^N chi(a) B_k(a/N) for the primitive character."""
    if k < 1:
        raise ValueError("k must be positive")
    return _gen_bernoulli(k, c.fundamental)


def l_value(s: int, c: DirichletChar) -> Fraction:
    """L(1-k, chi) = -B_{k,chi}/k at s = 1 - k <= 0."""
    k = 1 - s
    return -gen_bernoulli(k, c) / k
