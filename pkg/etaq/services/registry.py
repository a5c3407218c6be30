"""Inventory of certified identities and vanishing families."""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from etaq.models.meta import FormMeta
from etaq.services.characters import DirichletChar
from etaq.services.forms import (
    eta_expand,
    hurwitz_combo,
    rankin_cohen,
    rep_diagonal,
    theta,
    theta_aux,
    theta_unary,
)
from etaq.services.growth import eisenstein_closed_form, eisenstein_combination, eisenstein_definition
from etaq.services.newforms import newform_closed_series, newform_expand
from etaq.services.operators import op_sieve, op_U, op_V
from etaq.services.qseries import EtaSpec, QExpansion, parse_eta_spec, qx_scale, qx_sum, truncate
from etaq.services.scalars import QuadScalar
from etaq.services.verify import IdentityRecord, Recipe, VanishingFamily
from etaq.utils.errors import SpecParseError, UnknownIdentifier

logger = logging.getLogger("registry_service")

SQRT_M2 = QuadScalar.sqrt(-2)
SQRT_2 = QuadScalar.sqrt(2)
I = QuadScalar.sqrt(-1)


def _space(weight, level: int, D: int = 1) -> FormMeta:
    return FormMeta(weight=weight, level=level, character=DirichletChar(D))


# Recipe building blocks


def eta(spec: str) -> Recipe:
    parsed = parse_eta_spec(spec)
    return Recipe(f"eta[{spec}]", lambda limit: eta_expand(parsed, limit))


def newform(name: str) -> Recipe:
    return Recipe(name, lambda limit: newform_expand(name, limit))


def closed(name: str) -> Recipe:
    return Recipe(f"closed[{name}]", lambda limit: newform_closed_series(name, limit))


def sieved(pieces: List[Tuple]) -> Recipe:
    """sum of c * g|S_{M,m} over (c, g, M, m)."""
    def build(limit: int) -> QExpansion:
        forms = {name: newform_expand(name, limit) for _, name, _, _ in pieces}
        return qx_sum([qx_scale(op_sieve(forms[name], M, m), c) for c, name, M, m in pieces])

    label = " + ".join(f"({c}){name}|S:{M}:{m}" for c, name, M, m in pieces)
    return Recipe(label, build)


def _series(values: List, start: int = 0) -> QExpansion:
    return QExpansion(None, 1, start, values)


def _dual_newform_path(limit: int) -> QExpansion:
    """g4 = -1/2 theta(chi_-3,1)^2 + [Theta|V9, Theta]_1."""
    th = theta_unary(-3, 1, limit)
    big = theta(limit)
    bracket = rankin_cohen(op_V(big, 9), Fraction(1, 2), big, Fraction(1, 2), 1)
    return truncate(qx_sum([qx_scale(th * th, Fraction(-1, 2)), bracket]), limit)


def _signed_r12(limit: int) -> QExpansion:
    """1/4 sum (-1)^n r_{(1,2)}(8n+3) q^(n + 3/8) on the 1/8 grid."""
    a = [0] * (8 * (limit + 1))
    for n in range(limit + 1):
        a[8 * n] = Fraction((-1) ** n * rep_diagonal((1, 2), 8 * n + 3), 4)
    return QExpansion(None, 8, 3, a)


def _signed_r3(limit: int) -> QExpansion:
    return _series([(-1) ** n * rep_diagonal((1, 1, 1), n) for n in range(limit + 1)])


def _h12_u2(limit: int) -> QExpansion:
    return op_U(hurwitz_combo(1, 2, 2 * limit + 1), 2)


def _sieved_class_number_rhs(limit: int) -> QExpansion:
    h = _h12_u2(limit)
    return qx_sum([qx_scale(op_sieve(h, 4, m), w) for m, w in enumerate((12, -4, -4, 12))])


def _f_decomposition(which: str, c1: QuadScalar, c2: QuadScalar, alternate: bool = False):
    """E + c1 g1 + c2 g2; with alternate the cusp part is negated at even n."""
    def build(limit: int) -> QExpansion:
        cusp = qx_sum([
            qx_scale(newform_expand("g1", limit), c1),
            qx_scale(newform_expand("g2", limit), c2),
        ])
        if alternate:
            cusp = qx_sum([cusp, qx_scale(op_sieve(cusp, 2, 0), -2)])
        return qx_sum([eisenstein_combination(which, limit), cusp])
    return build


def _eis_definition(which: str) -> Recipe:
    return Recipe(
        f"{which} divisor sums",
        lambda limit: _series([eisenstein_definition(which, n) for n in range(limit + 1)]),
    )


def _eis_closed(which: str) -> Recipe:
    return Recipe(
        f"{which} closed form",
        lambda limit: _series([Fraction(1)] + [eisenstein_closed_form(which, n) for n in range(1, limit + 1)]),
    )


def _eis_combination(which: str) -> Recipe:
    return Recipe(f"{which} Eisenstein combination", lambda limit: eisenstein_combination(which, limit))


def _theta_combo(label: str, pieces: List[tuple]) -> Recipe:
    return Recipe(label, lambda limit: qx_sum([qx_scale(theta_aux(name, limit), c) for name, c in pieces]))


def _negate_odd(f: QExpansion) -> QExpansion:
    """Integer-grid rational series starting at q^0 with odd coefficients negated."""
    return _series([(-1) ** n * x for n, x in enumerate(f.a)])


@lru_cache(maxsize=None)
def _records() -> Dict[str, IdentityRecord]:
    S2_36 = FormMeta(weight=2, level=36, character=DirichletChar(12), is_cuspidal=True)
    M3_36 = _space(3, 36, -4)
    records = [
        IdentityRecord("THETA-ETA", eta("1^-2 2^5 4^-2"), Recipe("Theta", theta), _space(Fraction(1, 2), 4)),
        IdentityRecord("L31-A", Recipe("(g1+g2)/2", lambda L: qx_scale(newform_expand("g1", L) + newform_expand("g2", L), Fraction(1, 2))),
                       sieved([(1, "g1", 3, 1)]), S2_36),
        IdentityRecord("L31-B", Recipe("(g1-g2)/2", lambda L: qx_scale(newform_expand("g1", L) - newform_expand("g2", L), Fraction(1, 2))),
                       sieved([(1, "g1", 3, 2)]), S2_36),
        IdentityRecord("L31-C", Recipe("0", lambda L: _series([0] * (L + 1))), sieved([(1, "g1", 3, 0)]), S2_36),
        IdentityRecord("L32-A", newform("g1"), closed("g1"), S2_36),
        IdentityRecord("L32-B", newform("g2"), closed("g2"), S2_36),
        IdentityRecord(
            "L52-A",
            eta("3^-1 9^3 12^2"),
            sieved([
                (SQRT_M2 * Fraction(-1, 2), "g1", 12, 2),
                (SQRT_M2 * Fraction(1, 2), "g1", 12, 8),
                (SQRT_M2 * Fraction(-1, 6), "g3", 6, 5),
            ]),
            _space(2, 144, 12),
        ),
        IdentityRecord("L43-A", newform("g3"), closed("g3"), _space(2, 144, 12)),
        IdentityRecord("L46-A", eta("3^4 6^-2 12^4"), sieved([(Fraction(-1, 2), "g4", 3, 2)]), M3_36),
        IdentityRecord("L47-A", newform("g4"), Recipe("-theta^2/2 + [Theta|V9, Theta]_1", _dual_newform_path), M3_36),
        IdentityRecord("L47-B", Recipe("0", lambda L: _series([0] * (L + 1))), sieved([(1, "g4", 3, 0)]), M3_36),
        IdentityRecord("L47-C", _theta_combo("Theta2/2 - Theta3/2", [("Theta2", Fraction(1, 2)), ("Theta3", Fraction(-1, 2))]),
                       sieved([(1, "g4", 3, 1)]), M3_36),
        IdentityRecord("L47-D", _theta_combo("-Theta1/4", [("Theta1", Fraction(-1, 4))]), sieved([(1, "g4", 3, 2)]), M3_36),
        IdentityRecord(
            "L47-RC",
            _theta_combo("Theta2 - Theta3", [("Theta2", 1), ("Theta3", -1)]),
            Recipe("2[Theta|V9, Theta]_1", lambda L: qx_scale(
                rankin_cohen(op_V(theta(L), 9), Fraction(1, 2), theta(L), Fraction(1, 2), 1), 2)),
            M3_36,
        ),
        IdentityRecord("L47-E", newform("g4"), closed("g4"), M3_36),
        IdentityRecord("L95-A", eta("1^1 2^-2 4^3"), Recipe("1/4 sum (-1)^n r12(8n+3)", _signed_r12),
                       _space(1, 256, -4), grid_scale=8),
        IdentityRecord("L54-A", eta("8^1 16^2 32^1"), sieved([(SQRT_2 * Fraction(1, 4), "g5", 8, 3)]), _space(2, 256)),
        IdentityRecord("L54-B", newform("g5"), closed("g5"), _space(2, 256)),
        IdentityRecord("L56-A", eta("8^3 16^-1 32^2"), sieved([(I * Fraction(-1, 2), "g6", 8, 3)]), _space(2, 64, 8)),
        IdentityRecord("L57-B", newform("g6"), closed("g6"), _space(2, 64, 8)),
        IdentityRecord("L59-A", eta("8^3 16^3"), sieved([(SQRT_2 * Fraction(1, 8), "g7", 8, 3)]), _space(3, 128, -8)),
        IdentityRecord("L510-B", newform("g7"), closed("g7"), _space(3, 128, -8)),
        IdentityRecord("L512-A", eta("8^7 16^-3 32^2"), sieved([(Fraction(1, 2), "g8", 8, 3)]), _space(3, 32, -8)),
        IdentityRecord("L513-B", newform("g8"), closed("g8"), _space(3, 32, -8)),
        IdentityRecord("E1-DECOMP", _eis_combination("E1"), _eis_definition("E1"), _space(2, 36, 12)),
        IdentityRecord("E1-CLOSED", _eis_closed("E1"), _eis_definition("E1"), _space(2, 36, 12)),
        IdentityRecord(
            "L62-A",
            eta("1^-1 2^10 3^-1 4^-4"),
            Recipe("E1 - 2(1-sqrt(-2))g1 - 2(1+sqrt(-2))g2",
                   _f_decomposition("E1", -2 * (1 - SQRT_M2), -2 * (1 + SQRT_M2))),
            _space(2, 36, 12),
        ),
        IdentityRecord("E2-DECOMP", _eis_combination("E2"), _eis_definition("E2"), _space(2, 72, 12)),
        IdentityRecord("E2-CLOSED", _eis_closed("E2"), _eis_definition("E2"), _space(2, 72, 12)),
        IdentityRecord(
            "L68-A",
            eta("1^7 2^-2 3^-1"),
            Recipe("E2 + (-1)^(n+1) [-4(1-sqrt(-2))g1 - 4(1+sqrt(-2))g2]",
                   _f_decomposition("E2", -4 * (1 - SQRT_M2), -4 * (1 + SQRT_M2), alternate=True)),
            _space(2, 72, 12),
        ),
        IdentityRecord("L133-A", eta("1^2 2^3 4^-2"), Recipe("H12|U2|(12S0 - 4S1 - 4S2 + 12S3)", _sieved_class_number_rhs),
                       _space(Fraction(3, 2), 16)),
        IdentityRecord("THETA3-H", Recipe("Theta^3", lambda L: theta(L) ** 3),
                       Recipe("12 H12|U2", lambda L: qx_scale(_h12_u2(L), 12)), _space(Fraction(3, 2), 8)),
        IdentityRecord("L133-B", eta("1^6 2^-3"), Recipe("sum (-1)^n r3(n)", _signed_r3), _space(Fraction(3, 2), 16)),
    ]
    logger.debug(f"Registered {len(records)} identities")
    return {r.id: r for r in records}


@lru_cache(maxsize=None)
def _controls() -> Dict[str, IdentityRecord]:
    base = _records()
    sign = base["THETA-ETA"]
    scale = base["L46-A"]
    conj = base["L32-A"]
    return {
        "NEG-SIGN": IdentityRecord("NEG-SIGN", sign.lhs, Recipe("Theta, odd terms negated", lambda L: _negate_odd(theta(L))),
                                   sign.meta),
        "NEG-SCALE": IdentityRecord("NEG-SCALE", scale.lhs, sieved([(-1, "g4", 3, 2)]), scale.meta),
        "NEG-CONJ": IdentityRecord("NEG-CONJ", conj.lhs, closed("g2"), conj.meta),
    }


def registry() -> List[IdentityRecord]:
    """Every certified identity, in inventory order."""
    return list(_records().values())


def negative_controls() -> List[IdentityRecord]:
    return list(_controls().values())


def find_record(record_id: str) -> IdentityRecord:
    for table in (_records(), _controls()):
        if record_id in table:
            return table[record_id]
    raise UnknownIdentifier(f"unknown identity {record_id!r}")


# Vanishing families

FAMILIES: List[VanishingFamily] = [
    VanishingFamily.of("L52-1", "1^-1 3^3 4^2", "L52"),
    VanishingFamily.of("L52-2", "1^4 2^-2 4^4", "L52"),
    VanishingFamily.of("L95-1", "1^1 2^-2 4^3", "L95"),
    VanishingFamily.of("L95-2", "1^1 2^2 4^1", "L95"),
    VanishingFamily.of("L95-3", "1^3 2^-1 4^2", "L95"),
    VanishingFamily.of("L95-4", "1^3 2^3", "L95"),
    VanishingFamily.of("L95-5", "1^7 2^-3 4^2", "L95"),
    VanishingFamily.of("L65-1", "1^-1 2^10 3^-1 4^-4", "L65", "f1"),
    VanishingFamily.of("L65-2", "1^7 2^-2 3^-1", "L65", "f2"),
    VanishingFamily.of("L133-1", "1^2 2^3 4^-2", "L133"),
    VanishingFamily.of("L133-2", "1^6 2^-3", "L133"),
    VanishingFamily.of("INTRO-1^8", "1^8", "INTRO", "INTRO-1"),
    VanishingFamily.of("INTRO-2", "1^-1 3^3", "INTRO"),
    VanishingFamily.of("INTRO-3", "1^2 3^2", "INTRO"),
    VanishingFamily.of("LAGRANGE", "1^-8 2^20 4^-8", "NEVER"),
    VanishingFamily.of("PARTITIONS", "1^-1", "NEVER"),
    VanishingFamily(id="NF-C1", predicate="C1", newform="g1", aliases=("g1",)),
    VanishingFamily(id="NF-C3", predicate="C3", newform="g3", aliases=("g3",)),
    VanishingFamily(id="NF-C4", predicate="C4", newform="g4", aliases=("g4",)),
]


def find_family(name: str) -> VanishingFamily:
    """Look up a family by id, alias or eta-spec string."""
    for family in FAMILIES:
        if name == family.id or name in family.aliases:
            return family
    try:
        spec: EtaSpec = parse_eta_spec(name)
    except SpecParseError:
        raise UnknownIdentifier(f"unknown vanishing family {name!r}") from None
    for family in FAMILIES:
        if family.spec == spec:
            return family
    raise UnknownIdentifier(f"unknown vanishing family {name!r}")
