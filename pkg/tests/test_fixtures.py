import pytest

from ringlab.fixtures import (
    evaluate_claim,
    get_fixture,
    load_registry,
    run_fixture,
    stored_witness_holds,
    witness_check,
)


def test_registry_ids_unique():
    ids = [r.id for r in load_registry()]
    assert len(ids) == len(set(ids))
    assert "zn_p2q" in ids and "pr_incomparable" in ids


def test_out_of_scope_record_has_no_claims():
    rec = get_fixture("pr_incomparable")
    assert not rec.in_scope and rec.claims == ()


@pytest.mark.parametrize("rec", load_registry(), ids=lambda r: r.id)
def test_every_fixture_reproduces(rec):
    res = run_fixture(rec)
    assert res.ok, [(r.claim.describe(), str(r.verdict), r.note) for r in res.results if not r.matches]
    for c in rec.claims:
        if c.witness is not None:
            assert stored_witness_holds(c)


def test_headline_verdicts():
    assert witness_check(get_fixture("quot_8Z_16Z")).witness == 4
    assert witness_check(get_fixture("product_4Zx6Z")).witness == (2, 6)
    assert witness_check(get_fixture("zn_p2q")).refuted
    assert witness_check(get_fixture("d_annihilator_zn")).proved


def test_unknown_fixture():
    with pytest.raises(KeyError):
        get_fixture("no_such_fixture")


def test_evaluate_from_scratch_matches_stored():
    c = next(c for c in get_fixture("zxz_6z0").claims if c.predicate == "r")
    assert evaluate_claim(c).witness == (2, (3, 0))
