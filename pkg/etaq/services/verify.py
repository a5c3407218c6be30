"""Sturm-bound certification, vanishing predicates, cross-checks and growth scans."""
import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from etaq.config import (
    G1_FLOOR,
    G1_THRESHOLD,
    G2_FLOOR,
    G2_THRESHOLD,
    IDENTITY_CHECK_LIMIT,
    MAX_SERIES_LIMIT,
)
from etaq.models.meta import FormMeta
from etaq.models.reports import CrosscheckReport, Mismatch, ScanReport, VerificationReport
from etaq.services.growth import growth_G_squared, scan_growth
from etaq.services.newforms import newform_expand
from etaq.services.pool import chunk_ranges, run_chunks
from etaq.services.qseries import EtaSpec, QExpansion, c_coefficients, parse_eta_spec
from etaq.utils.arith import factorize
from etaq.utils.errors import EtaqError, RecipeEvaluationError, ResourceBudgetExceeded, UnknownIdentifier

logger = logging.getLogger("verify_service")

MAX_REPORTED_MISMATCHES = 20


def sturm_bound(kappa, N: int) -> int:
    """floor(N * kappa/12 * prod_{p|N} (1 + 1/p))."""
    kappa = Fraction(kappa)
    if N < 1 or kappa <= 0:
        raise ValueError("need N >= 1 and kappa > 0")
    value = N * kappa / 12
    for p in factorize(N):
        value *= Fraction(p + 1, p)
    return math.floor(value)


# Identity certification


@dataclass(frozen=True)
class Recipe:
    """A named series builder; build(L) must know every exponent <= L."""

    label: str
    build: Callable[[int], QExpansion]

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class IdentityRecord:
    """lhs == rhs in the space meta; exponents are compared after scaling by grid_scale."""

    id: str
    lhs: Recipe
    rhs: Recipe
    meta: FormMeta
    grid_scale: int = 1
    extra_check_limit: int = IDENTITY_CHECK_LIMIT

    @property
    def bound(self) -> int:
        return sturm_bound(self.meta.weight, self.meta.level)


def _evaluate(recipe: Recipe, limit: int, top: Fraction) -> QExpansion:
    try:
        series = recipe.build(limit)
    except EtaqError:
        raise
    except Exception as e:
        raise RecipeEvaluationError(f"recipe {recipe} failed: {e}") from e
    if series.known_through() <= top:
        raise RecipeEvaluationError(
            f"recipe {recipe} is known only below q^{series.known_through()}, need q^{top}"
        )
    return series


def verify_identity(rec: IdentityRecord, limit: Optional[int] = None) -> VerificationReport:
    """Compare both sides at every grid exponent e with grid_scale * e <= max(limit, bound)."""
    t0 = time.time()
    bound = rec.bound
    check = max(rec.extra_check_limit if limit is None else limit, bound)
    top = Fraction(check, rec.grid_scale)
    build_limit = max(1, math.ceil(top))
    lhs = _evaluate(rec.lhs, build_limit, top)
    rhs = _evaluate(rec.rhs, build_limit, top)
    den = lhs.den * rhs.den // math.gcd(lhs.den, rhs.den)
    step = 24 // den
    first = min(lhs.start24, rhs.start24)
    last = math.floor(24 * top)
    mismatches: List[Mismatch] = []
    checked = 0
    for k24 in range(first, last + 1, step):
        checked += 1
        left, right = lhs.coeff24(k24), rhs.coeff24(k24)
        if left != right:
            if len(mismatches) < MAX_REPORTED_MISMATCHES:
                mismatches.append(Mismatch(n=str(Fraction(k24, 24)), lhs=str(left), rhs=str(right)))
    status = "FAIL" if mismatches else "PASS"
    elapsed = int(1000 * (time.time() - t0))
    if mismatches:
        logger.warning(f"{rec.id}: first mismatch at q^{mismatches[0].n}")
    logger.info(f"{rec.id}: {status} ({checked} coefficients, Sturm bound {bound}, {elapsed} ms)")
    return VerificationReport(
        id=rec.id,
        status=status,
        bound=bound,
        checked=checked,
        mismatches=mismatches,
        elapsed_ms=elapsed,
        space=str(rec.meta),
    )


# Vanishing predicates


def _has_odd_ord(m: int, keep: Callable[[int], bool]) -> bool:
    return any(e % 2 and keep(p) for p, e in factorize(m).items())


def _is_three_square_exception(m: int) -> bool:
    while m % 4 == 0:
        m //= 4
    return m % 8 == 7


@dataclass(frozen=True)
class PredicateId:
    """rule(u*n + v) decides whether the n-th coefficient vanishes."""

    id: str
    u: int
    v: int
    rule: Callable[[int], bool]

    def __call__(self, n: int) -> bool:
        return self.rule(self.u * n + self.v)


PREDICATES: Dict[str, PredicateId] = {
    p.id: p
    for p in [
        PredicateId("L52", 3, 2, lambda m: _has_odd_ord(m, lambda p: p % 4 == 3)),
        PredicateId("L95", 8, 3, lambda m: _has_odd_ord(m, lambda p: p % 8 in (5, 7))),
        PredicateId("L65", 1, 0, lambda m: m % 3 == 2 and _has_odd_ord(m, lambda p: p % 4 == 3)),
        PredicateId("L133", 1, 0, _is_three_square_exception),
        PredicateId("INTRO", 3, 1, lambda m: _has_odd_ord(m, lambda p: p % 3 == 2)),
        PredicateId("NEVER", 1, 0, lambda m: False),
        PredicateId("C1", 1, 0, lambda m: m % 3 == 0 or _has_odd_ord(m, lambda p: p % 4 == 3)),
        PredicateId("C3", 1, 0, lambda m: math.gcd(m, 6) > 1 or _has_odd_ord(m, lambda p: p % 4 == 3)),
        PredicateId("C4", 1, 0, lambda m: m % 3 == 0 or _has_odd_ord(m, lambda p: p % 4 == 3)),
    ]
}


def get_predicate(pid: str) -> PredicateId:
    try:
        return PREDICATES[pid]
    except KeyError:
        raise UnknownIdentifier(f"unknown predicate {pid!r}") from None


def vanishing_predicate(pid: str, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return get_predicate(pid)(n)


@dataclass(frozen=True)
class VanishingFamily:
    """Coefficients of an eta-quotient C-series (or a newform) checked against a predicate."""

    id: str
    predicate: str
    spec: Optional[EtaSpec] = None
    newform: Optional[str] = None
    aliases: Tuple[str, ...] = ()

    @property
    def arg_map(self) -> Tuple[int, int]:
        p = get_predicate(self.predicate)
        return p.u, p.v

    def zero_flags(self, limit: int) -> List[bool]:
        """Whether the n-th coefficient vanishes, for n = 1 .. limit."""
        if self.newform is not None:
            f = newform_expand(self.newform, limit)
            return [not f[n] for n in range(1, limit + 1)]
        coeffs = c_coefficients(self.spec, limit)
        return [c == 0 for c in coeffs[1:]]

    @classmethod
    def of(cls, id: str, spec: str, predicate: str, *aliases: str) -> "VanishingFamily":
        return cls(id=id, predicate=predicate, spec=parse_eta_spec(spec), aliases=(spec, *aliases))


def _crosscheck_chunk(payload: Tuple[str, int, Sequence[bool]]) -> Tuple[List[Tuple[int, bool, bool]], int]:
    pid, start, flags = payload
    predicate = get_predicate(pid)
    bad = []
    zeros = 0
    for offset, is_zero in enumerate(flags):
        n = start + offset
        zeros += is_zero
        expected = predicate(n)
        if expected != is_zero:
            bad.append((n, is_zero, expected))
    return bad, zeros


def crosscheck_vanishing(family: VanishingFamily, limit: int, jobs: int = 1, include_n0: bool = False) -> CrosscheckReport:
    """Zero pattern of the family for 1 <= n <= limit against its predicate.

    With include_n0 the constant term of an eta family is checked as well; n = 0 is
    never part of a vanishing set, so a zero there is reported as a mismatch.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if limit > MAX_SERIES_LIMIT:
        raise ResourceBudgetExceeded(f"limit {limit} exceeds the series budget {MAX_SERIES_LIMIT}")
    t0 = time.time()
    flags = family.zero_flags(limit)
    payloads = [(family.predicate, lo, flags[lo - 1:hi]) for lo, hi in chunk_ranges(1, limit, max(jobs, 1))]
    results = run_chunks(_crosscheck_chunk, payloads, jobs)
    bad = sorted(b for chunk, _ in results for b in chunk)
    zero_count = sum(z for _, z in results)
    checked = limit
    if include_n0:
        if family.spec is None:
            logger.warning(f"{family.id}: constant term is not checked for newform families")
        else:
            checked += 1
            if c_coefficients(family.spec, 1)[0] == 0:
                zero_count += 1
                bad.insert(0, (0, True, False))
    mismatches = [
        Mismatch(n=str(n), lhs="0" if is_zero else "nonzero", rhs="vanishes" if expected else "nonvanishing")
        for n, is_zero, expected in bad[:MAX_REPORTED_MISMATCHES]
    ]
    status = "FAIL" if bad else "PASS"
    elapsed = int(1000 * (time.time() - t0))
    logger.info(f"{family.id}: {status}, {zero_count} zeros in {checked} coefficients ({elapsed} ms)")
    return CrosscheckReport(
        id=family.id,
        status=status,
        bound=limit,
        checked=checked,
        mismatches=mismatches,
        elapsed_ms=elapsed,
        zero_count=zero_count,
        nonzero_count=checked - zero_count,
    )


# Nonvanishing and growth scans

SCAN_TARGETS: Dict[str, Tuple[str, str]] = {
    "f1": ("1^-1 2^10 3^-1 4^-4", "G1"),
    "f2": ("1^7 2^-2 3^-1", "G2"),
}

GROWTH_DEFAULTS: Dict[str, Tuple[int, Fraction]] = {
    "G1": (G1_FLOOR, Fraction(G1_THRESHOLD)),
    "G2": (G2_FLOOR, Fraction(G2_THRESHOLD)),
}


def _scan_chunk(payload: Tuple[str, int, Sequence[int]]) -> Tuple[Optional[Fraction], Optional[int]]:
    which, start, ns = payload
    best, best_n = None, None
    for n in ns:
        value = growth_G_squared(which, n)
        if best is None or value < best:
            best, best_n = value, n
    return best, best_n


def scan_nonvanishing(
    target: str,
    residue: Optional[int],
    limit: int,
    modulus: int = 3,
    jobs: int = 1,
    coefficients: Optional[Sequence[int]] = None,
    require_positive: bool = False,
) -> ScanReport:
    """Report every n <= limit in the residue class where the coefficient of f1 or f2 vanishes."""
    if target not in SCAN_TARGETS:
        raise UnknownIdentifier(f"unknown scan target {target!r}")
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if limit > MAX_SERIES_LIMIT:
        raise ResourceBudgetExceeded(f"limit {limit} exceeds the series budget {MAX_SERIES_LIMIT}")
    t0 = time.time()
    spec, which = SCAN_TARGETS[target]
    if coefficients is None or len(coefficients) <= limit:
        coefficients = c_coefficients(parse_eta_spec(spec), limit)
    ns = [n for n in range(1, limit + 1) if residue is None or n % modulus == residue]
    zeros = [n for n in ns if coefficients[n] == 0]
    non_positive = [n for n in ns if coefficients[n] <= 0] if require_positive else []
    chunks = [(which, lo, ns[lo:hi + 1]) for lo, hi in chunk_ranges(0, len(ns) - 1, max(jobs, 1))]
    minima = [m for m in run_chunks(_scan_chunk, chunks, jobs) if m[0] is not None]
    min_g, min_at = min(minima, key=lambda m: (m[0], m[1])) if minima else (None, None)
    status = "FAIL" if zeros or non_positive else "PASS"
    elapsed = int(1000 * (time.time() - t0))
    logger.info(f"{target} scan through {limit}: {status}, {len(zeros)} zeros ({elapsed} ms)")
    return ScanReport(
        id=target,
        status=status,
        bound=limit,
        checked=len(ns),
        elapsed_ms=elapsed,
        zeros=zeros,
        non_positive=non_positive,
        min_g_squared=None if min_g is None else str(min_g),
        min_g_at=min_at,
    )


def scan_growth_threshold(
    which: str, limit: int, threshold: Optional[Fraction] = None, floor: Optional[int] = None
) -> ScanReport:
    """PASS iff G(n) > threshold for every floor < n <= limit with n = 1 (mod 3)."""
    if which not in GROWTH_DEFAULTS:
        raise UnknownIdentifier(f"unknown growth function {which!r}")
    default_floor, default_threshold = GROWTH_DEFAULTS[which]
    floor = default_floor if floor is None else floor
    threshold = default_threshold if threshold is None else Fraction(threshold)
    t0 = time.time()
    best, best_n = scan_growth(which, floor, limit)
    failed = best is not None and best <= threshold * threshold
    return ScanReport(
        id=which,
        status="FAIL" if failed else "PASS",
        bound=limit,
        checked=len(range(floor + 1 + (1 - floor - 1) % 3, limit + 1, 3)),
        elapsed_ms=int(1000 * (time.time() - t0)),
        min_g_squared=None if best is None else str(best),
        min_g_at=best_n,
    )
