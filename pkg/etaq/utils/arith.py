"""Elementary arithmetic: prime sieve, trial division and friends."""
import math
from functools import lru_cache
from typing import Dict, List

import numpy as np

from etaq.config import PRIME_SIEVE_BOUND


def smallprimes(bound: int) -> List[int]:
    """Primes below bound via a numpy sieve of Eratosthenes."""
    sieve = np.ones(max(bound, 2), dtype=np.uint8)
    sieve[0:2] = 0
    for i in range(math.isqrt(bound) + 1):
        if sieve[i] == 0:
            continue
        sieve[i * i :: i] = 0
    return [int(p) for p in sieve.nonzero()[0]]


@lru_cache(maxsize=1)
def _prime_table() -> List[int]:
    return smallprimes(math.isqrt(PRIME_SIEVE_BOUND) + 2)


def factorize(n: int) -> Dict[int, int]:
    """Complete factorization of n >= 1 by trial division.

    Args:
        n: Positive integer.

    Returns:
        Mapping prime -> exponent (empty for n = 1).
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: Dict[int, int] = {}
    for p in _prime_table():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if n > 1:
        # trial division past the table for arguments beyond the sieve bound
        p = _prime_table()[-1] + 2
        while p * p <= n:
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
            p += 2
        if n > 1:
            factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def divisors(n: int) -> List[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_count(n: int) -> int:
    """Number of positive divisors d(n)."""
    return math.prod(e + 1 for e in factorize(n).values())


def radical(n: int) -> int:
    return math.prod(factorize(n))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(abs(n)).values())


def squarefree_kernel(num: int, den: int = 1) -> int:
    """Squarefree part of the positive rational num/den."""
    exponents: Dict[int, int] = {}
    for part, sign in ((num, 1), (den, -1)):
        for p, e in factorize(part).items():
            exponents[p] = exponents.get(p, 0) + sign * e
    return math.prod(p for p, e in exponents.items() if e % 2)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
