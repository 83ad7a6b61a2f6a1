import pytest

from superlie.catalog import (
    FIXED_NAMES,
    candidate_entries,
    get_entry,
    isomorphism_witness,
    list_names,
    verify_catalog,
    verify_entry,
)
from superlie.clifford import export
from superlie.fileformat import AlgebraFormatError, dumps, loads, table_from_document
from superlie.nlie import BracketTable
from superlie.superspace import BasisSignature

from oracles import filippov_ok


def test_names():
    assert list(FIXED_NAMES) == ["T4a", "T4b", "T5a", "T5b", "T5c"]
    assert "clifford_lie(n)" in list_names()
    with pytest.raises(KeyError):
        get_entry("T9")
    with pytest.raises(KeyError):
        get_entry("clifford_lie(x)")


def test_parametric_entries():
    assert get_entry("abelian(1,2)").table == BracketTable.abelian(BasisSignature(1, 2))
    assert get_entry("clifford_lie(2)").table == export(2, "lie")
    assert get_entry("clifford_ternary( 2 )").table == export(2, "ternary")


@pytest.mark.parametrize("name", ["T4a", "T4b", "T5a"])
def test_passing_entries(name):
    v = verify_entry(get_entry(name))
    assert v.ok and v.parse_error is None
    assert filippov_ok(get_entry(name).table)


def test_t4_presentations_isomorphic():
    target, mapped = isomorphism_witness(get_entry("T4a"))
    assert target == "T4b"
    assert mapped == get_entry("T4b").table
    assert isomorphism_witness(get_entry("T4b")) is None


def test_t5b_rejected_by_forced_zero_rule():
    entry = get_entry("T5b")
    with pytest.raises(AlgebraFormatError, match="repeats an even"):
        entry.table
    v = verify_entry(entry)
    assert not v.ok and not v.report.skew_ok
    assert v.report.witnesses[0].kind == "skew"


def test_t5c_verdict_matches_oracle():
    entry = get_entry("T5c")
    v = verify_entry(entry)
    assert v.report.filippov_ok == filippov_ok(entry.table)
    assert not v.ok


def test_candidates_pass():
    cands = candidate_entries()
    assert [c.name for c in cands] == ["T5b_candidate"]
    assert filippov_ok(cands[0].table)


def test_verify_catalog_default_order():
    verdicts = verify_catalog(["T4a", "T5c", "abelian(0,1)"])
    assert list(verdicts) == ["T4a", "T5c", "abelian(0,1)"]
    assert [v.ok for v in verdicts.values()] == [True, False, True]


@pytest.mark.parametrize("name", list(FIXED_NAMES) + ["abelian(2,1)", "clifford_lie(2)", "clifford_ternary(2)"])
def test_round_trip(name):
    entry = get_entry(name)
    try:
        T = entry.table
        strict = True
    except AlgebraFormatError:
        T = entry.raw_table
        strict = False
    text = dumps(T)
    again = loads(text, strict=strict)
    assert again == T and dumps(again) == text
    assert table_from_document(entry.document, strict=strict) == T
