import random
from fractions import Fraction

import pytest

from etaq.config import MAX_SERIES_LIMIT
from etaq.models.meta import FormMeta
from etaq.services.forms import theta
from etaq.services.growth import growth_G_squared
from etaq.services.newforms import newform_expand
from etaq.services.qseries import c_coefficients, parse_eta_spec, series_from_coefficients
from etaq.services.registry import find_family, find_record
from etaq.services.scalars import QuadScalar
from etaq.services.verify import (
    IdentityRecord,
    Recipe,
    crosscheck_vanishing,
    get_predicate,
    scan_growth_threshold,
    scan_nonvanishing,
    sturm_bound,
    vanishing_predicate,
    verify_identity,
)
from etaq.utils.errors import RecipeEvaluationError, ResourceBudgetExceeded, UnknownIdentifier


@pytest.mark.parametrize("kappa, N, expected", [
    (2, 36, 12),
    (Fraction(3, 2), 16, 3),
    (2, 1, 0),
    (2, 144, 48),
    (1, 256, 32),
    (3, 36, 18),
])
def test_sturm_bound(kappa, N, expected):
    assert sturm_bound(kappa, N) == expected


def test_sturm_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        sturm_bound(0, 4)
    with pytest.raises(ValueError):
        sturm_bound(2, 0)


def test_identity_passes():
    report = verify_identity(find_record("THETA-ETA"), 100)
    assert report.passed
    assert report.checked == 101
    assert report.mismatches == []


@pytest.mark.parametrize("record_id, first", [("NEG-SIGN", "1"), ("NEG-SCALE", "2"), ("NEG-CONJ", "2")])
def test_negative_controls_fail_at_first_mismatch(record_id, first):
    report = verify_identity(find_record(record_id), 60)
    assert report.status == "FAIL"
    assert report.mismatches[0].n == first


def test_fractional_grid_identity():
    report = verify_identity(find_record("L95-A"), 200)
    assert report.passed
    assert report.bound == 32


def test_broken_recipe_is_reported():
    def broken(limit):
        raise ZeroDivisionError("boom")

    rec = IdentityRecord("X", Recipe("theta", theta), Recipe("broken", broken), FormMeta(weight=Fraction(1, 2), level=4))
    with pytest.raises(RecipeEvaluationError):
        verify_identity(rec, 10)


def test_short_recipe_is_reported():
    rec = IdentityRecord(
        "X",
        Recipe("theta", theta),
        Recipe("short", lambda limit: series_from_coefficients([1, 2])),
        FormMeta(weight=Fraction(1, 2), level=4),
    )
    with pytest.raises(RecipeEvaluationError):
        verify_identity(rec, 10)


def test_predicates():
    # 3n + 1 = 10 = 2 * 5 has an odd power of 2
    assert vanishing_predicate("INTRO", 3)
    assert not vanishing_predicate("INTRO", 1)
    assert vanishing_predicate("L133", 7)
    assert vanishing_predicate("L133", 28)
    assert not vanishing_predicate("L133", 6)
    assert not vanishing_predicate("NEVER", 12)
    assert vanishing_predicate("L52", 3)
    assert not vanishing_predicate("L52", 1)
    with pytest.raises(UnknownIdentifier):
        get_predicate("L99")
    with pytest.raises(ValueError):
        vanishing_predicate("L52", 0)


@pytest.mark.parametrize("family", ["L52-1", "L52-2", "L95-1", "L95-4", "L65-1", "L65-2", "L133-1", "L133-2",
                                    "INTRO-1", "INTRO-2", "INTRO-3", "LAGRANGE", "PARTITIONS"])
def test_crosscheck_small(family):
    report = crosscheck_vanishing(find_family(family), 600)
    assert report.status == "PASS", report.mismatches
    assert report.zero_count + report.nonzero_count == 600


@pytest.mark.parametrize("family", ["NF-C1", "NF-C3", "NF-C4"])
def test_newform_zero_patterns(family):
    assert crosscheck_vanishing(find_family(family), 400).status == "PASS"


def test_crosscheck_counts_zeros():
    report = crosscheck_vanishing(find_family("INTRO-1^8"), 10)
    # 3n + 1 in {10, 22}: n = 3, 7
    assert report.zero_count == 2
    assert report.nonzero_count == 8


def test_include_constant_term():
    report = crosscheck_vanishing(find_family("L52-1"), 100, include_n0=True)
    assert report.checked == 101
    assert report.status == "PASS"


def test_workers_do_not_change_the_report():
    family = find_family("L95-3")
    one = crosscheck_vanishing(family, 2000, jobs=1)
    two = crosscheck_vanishing(family, 2000, jobs=2)
    assert one.model_dump(exclude={"elapsed_ms"}) == two.model_dump(exclude={"elapsed_ms"})


def test_series_budget():
    with pytest.raises(ResourceBudgetExceeded):
        crosscheck_vanishing(find_family("L52-1"), MAX_SERIES_LIMIT + 1)


def test_f2_has_no_zeros_on_one_mod_three():
    report = scan_nonvanishing("f2", 1, 3000)
    assert report.status == "PASS"
    assert report.zeros == []
    assert report.checked == 1000


def test_f1_nonzero_on_multiples_of_three():
    report = scan_nonvanishing("f1", 0, 1120)
    assert report.status == "PASS"
    assert report.zeros == []


def test_f1_positive_on_one_mod_three():
    report = scan_nonvanishing("f1", 1, 1120, require_positive=True)
    assert report.status == "PASS"
    assert report.non_positive == []


def test_f1_takes_negative_values_on_multiples_of_three():
    # f1(3) = -6
    assert scan_nonvanishing("f1", 0, 10, require_positive=True).non_positive[0] == 3


def test_growth_threshold_scan():
    report = scan_growth_threshold("G1", 4000)
    assert report.status == "PASS"
    assert Fraction(report.min_g_squared) > Fraction(16, 9)
    # n in (1120, 4000] with n = 1 (mod 3)
    assert report.checked == 960


def test_unknown_scan_target():
    with pytest.raises(UnknownIdentifier):
        scan_nonvanishing("f3", 1, 10)
    with pytest.raises(UnknownIdentifier):
        scan_growth_threshold("G3", 10)


@pytest.mark.slow
@pytest.mark.parametrize("family", ["L52-1", "L52-2", "L95-1", "L95-2", "L95-3", "L95-4", "L95-5", "L65-1",
                                    "L65-2", "L133-1", "L133-2", "INTRO-1", "INTRO-2", "INTRO-3", "LAGRANGE"])
def test_crosscheck_desk_scale(family):
    assert crosscheck_vanishing(find_family(family), 10_000).status == "PASS"


@pytest.mark.slow
def test_f2_desk_scale():
    assert scan_nonvanishing("f2", 1, 50_000).zeros == []


SQRT_M2 = QuadScalar.sqrt(-2)
F1 = parse_eta_spec("1^-1 2^10 3^-1 4^-4")
F2 = parse_eta_spec("1^7 2^-2 3^-1")


def test_f1_against_g1_on_two_mod_three():
    a1 = c_coefficients(F1, 2000)
    g1 = newform_expand("g1", 2000)
    for n in range(2, 2001, 3):
        assert a1[n] == 4 * SQRT_M2 * g1[n]
        assert (a1[n] == 0) == (not g1[n])


def test_f2_against_g1_on_two_mod_three():
    # the sign alternates with the parity of n: a2(2) = 16 = -8 sqrt(-2) c1(2), a2(5) = 16 = 8 sqrt(-2) c1(5)
    a2 = c_coefficients(F2, 2000)
    g1 = newform_expand("g1", 2000)
    assert a2[2] == 16 and a2[5] == 16
    for n in range(2, 2001, 3):
        assert a2[n] == (-1) ** (n + 1) * 8 * SQRT_M2 * g1[n]
        assert (a2[n] == 0) == (not g1[n])


def test_growth_functions_agree_on_odd_n():
    for m in range(1, 3000, 2):
        assert growth_G_squared("G1", m) == growth_G_squared("G2", m)


def _large_growth_never_vanishes(limit, samples):
    a2 = c_coefficients(F2, limit)
    rng = random.Random(20240601)
    candidates = range(1, limit + 1, 3)
    checked = 0
    for n in rng.sample(candidates, samples):
        if growth_G_squared("G2", n) > 64:
            assert a2[n] != 0, n
            checked += 1
    return checked


def test_large_growth_never_vanishes():
    assert _large_growth_never_vanishes(5000, 300) > 0


@pytest.mark.slow
def test_large_growth_never_vanishes_desk_scale():
    assert _large_growth_never_vanishes(50_000, 1000) > 0
