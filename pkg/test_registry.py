import pytest

from etaq.services.qseries import parse_eta_spec
from etaq.services.registry import FAMILIES, find_family, find_record, negative_controls, registry
from etaq.services.verify import verify_identity
from etaq.utils.errors import UnknownIdentifier

RECORD_IDS = [rec.id for rec in registry()]


def test_inventory_size_and_ids():
    assert len(RECORD_IDS) >= 30
    assert len(set(RECORD_IDS)) == len(RECORD_IDS)
    assert not any(rid.startswith("NEG-") for rid in RECORD_IDS)


def test_negative_controls_resolve_by_id():
    ids = [rec.id for rec in negative_controls()]
    assert ids == ["NEG-SIGN", "NEG-SCALE", "NEG-CONJ"]
    assert find_record("NEG-CONJ").id == "NEG-CONJ"


def test_unknown_record():
    with pytest.raises(UnknownIdentifier) as err:
        find_record("NOPE")
    assert err.value.exit_code == 4


@pytest.mark.parametrize("record_id", RECORD_IDS)
def test_identity_certified_to_sturm_bound(record_id):
    rec = find_record(record_id)
    report = verify_identity(rec, 0)
    assert report.passed, report.mismatches
    assert report.bound == rec.bound


@pytest.mark.slow
@pytest.mark.parametrize("record_id", RECORD_IDS)
def test_identity_desk_scale(record_id):
    assert verify_identity(find_record(record_id)).passed


@pytest.mark.parametrize("record_id, bound", [
    ("THETA-ETA", 0),
    ("L31-A", 12),
    ("L52-A", 48),
    ("L46-A", 18),
    ("L95-A", 32),
    ("L54-A", 64),
    ("L56-A", 16),
    ("L59-A", 48),
    ("L512-A", 12),
    ("L133-A", 3),
    ("THETA3-H", 1),
])
def test_recorded_bounds(record_id, bound):
    assert find_record(record_id).bound == bound


def test_family_lookup():
    assert find_family("INTRO-1").id == "INTRO-1^8"
    assert find_family("1^8").id == "INTRO-1^8"
    assert find_family("4^2  1^-1 3^3").id == "L52-1"
    assert find_family("f2").spec == parse_eta_spec("1^7 2^-2 3^-1")
    assert find_family("g4").newform == "g4"
    with pytest.raises(UnknownIdentifier):
        find_family("1^5")
    with pytest.raises(UnknownIdentifier):
        find_family("not a spec")


def test_family_ids_unique():
    ids = [f.id for f in FAMILIES]
    assert len(set(ids)) == len(ids)
    assert find_family("L95-5").arg_map == (8, 3)
