import json

import pytest

from ringlab.checks import CHECKS, SKIP, Case
from ringlab.corpus import CorpusSpec, build_corpus, default_corpus, default_expressions, read_corpus_file
from ringlab.harness import (
    RECORD_KEYS,
    VACUOUS,
    FlagExprError,
    parse_flag_expr,
    report_json,
    report_table,
    run_check,
    run_suite,
    search_counterexamples,
    search_kind,
    symbolic_exactness,
    validate_report,
)


def test_default_corpus_contents():
    spec = default_corpus()
    assert "Z12" in spec and "dup(Z4, <2>)" in spec and "Z2 x Z2 x Z2 x Z2" in spec
    assert spec.digest == default_corpus().digest
    assert len(spec) == len(set(default_expressions()))


def test_corpus_file(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("# tiny\nZ4\nZ2 x Z2  # trailing comment\n\n%symbolic\n")
    spec = read_corpus_file(p)
    assert spec.expressions == ("Z4", "Z2 x Z2") and spec.symbolic
    assert spec.digest != CorpusSpec(("Z4", "Z2 x Z2"), False).digest


def test_every_check_registered_with_scope():
    assert len(CHECKS) >= 30
    for c in CHECKS.values():
        assert c.anchor and c.scope and c.expect in ("hold", "refute")


def test_small_suite(small_corpus):
    rep = run_suite(small_corpus)
    assert rep.ok
    for r in rep.results:
        if r.expect == "hold":
            assert r.status in ("Proved", VACUOUS), (r.id, r.witness)
    assert rep.get("T_char").hypothesis_hits > 0
    assert rep.get("NC_quotient1").status == "Refuted"


def test_threads_do_not_change_report(small_corpus, monkeypatch):
    ids = ["T_char", "C_coro", "P_inters", "T_ca1", "P_eqM"]
    one = report_json(run_suite(small_corpus, ids, threads=1))
    monkeypatch.setenv("RINGLAB_THREADS", "4")
    four = report_json(run_suite(small_corpus, ids))
    assert one == four


def test_empty_corpus_all_vacuous():
    rep = run_suite(build_corpus(CorpusSpec((), symbolic=False)))
    assert all(r.instances == 0 and r.status == VACUOUS for r in rep.results)
    assert rep.ok  # negative controls without instances do not fail
    validate_report(report_json(rep))


def test_report_shape(small_corpus):
    rep = run_suite(small_corpus, ["T_every", "NC_ca1_converse"])
    doc = validate_report(report_json(rep))
    assert [tuple(r) for r in doc["records"]] == [RECORD_KEYS] * 2
    assert all(r["millis"] == 0 for r in doc["records"]) and doc["wall_millis"] == 0
    assert "[range: " in doc["records"][0]["anchor"]
    timed = json.loads(report_json(rep, timing=True))
    assert set(timed) == {"corpus_digest", "wall_millis", "records"}
    table = report_table(rep)
    assert table.splitlines()[0].split() == ["id", "status", "instances", "hits", "skipped", "millis"]
    assert "NC_ca1_converse witness: ZZ x ZZ: I=4Z x 0Z" in table


def test_schema_rejects_bad_records(small_corpus):
    import jsonschema

    doc = json.loads(report_json(run_suite(small_corpus, ["T_every"])))
    doc["records"][0]["status"] = "Maybe"
    with pytest.raises(jsonschema.ValidationError):
        validate_report(doc)
    doc = json.loads(report_json(run_suite(small_corpus, ["T_every"])))
    rec = doc["records"][0]
    doc["records"][0] = {k: rec[k] for k in reversed(RECORD_KEYS)}
    with pytest.raises(jsonschema.ValidationError):
        validate_report(doc)


def test_run_check_counts_skips_and_vacuity(small_corpus):
    from ringlab.checks import TheoremCheck

    def gen(corpus):
        yield SKIP
        yield Case(False, lambda: False, "never")
        yield Case(True, lambda: True, "fine")
        yield Case(True, lambda: False, lambda: "here")
        yield Case(True, lambda: False, "later")

    r = run_check(TheoremCheck("X", "toy", "toy", gen), small_corpus)
    assert (r.instances, r.hypothesis_hits, r.skipped, r.status, r.witness) == (4, 3, 1, "Refuted", "here")
    assert not r.ok
    r = run_check(TheoremCheck("Y", "toy", "toy", lambda c: iter([Case(False, None, "")])), small_corpus)
    assert r.status == VACUOUS and r.ok


def test_flag_expressions():
    pred = parse_flag_expr("semi_r & !(prime | n)", ("semi_r", "prime", "n"))
    assert pred({"semi_r": True, "prime": False, "n": False})
    assert not pred({"semi_r": True, "prime": True, "n": False})
    for bad in ("", "semi_r &", "(semi_r", "semi_r semi_r", "bogus", "semi_r & 3"):
        with pytest.raises(FlagExprError):
            parse_flag_expr(bad, ("semi_r", "prime"))
    assert search_kind("sr_alt & !r") == "submodule"
    assert search_kind("semi_r & !r") == "ideal"


def test_search_examples(small_corpus):
    hits = search_counterexamples("semi_r & !semi_n", small_corpus)
    assert any(h.carrier == "Z12" and h.obj == "<4>" for h in hits)
    hits = search_counterexamples("semi_r & !prime", small_corpus)
    assert any(h.carrier == "Z2 x Z2 x Z2" and h.obj == "<(0,0,1)>" for h in hits)
    assert search_counterexamples("r & !semi_r", small_corpus) == []
    assert search_counterexamples("semi_r & !sr_alt", small_corpus, max_order=4)
    assert all(h.carrier in ("Z2", "Z4", "Z2 x Z2", "dup(Z2, <1>)") for h in
               search_counterexamples("semi_r", small_corpus, max_order=4))


def test_symbolic_exactness_small():
    from ringlab.symbolic.rings import SymRing, sym_ideal_from_comps

    Z = SymRing((0,), label="ZZ")
    objs, comps, bad = symbolic_exactness(8, [("ZZ", sym_ideal_from_comps(Z, (n,))) for n in range(2, 10)])
    assert objs == 8 and comps == 8 * 4 and bad == []
