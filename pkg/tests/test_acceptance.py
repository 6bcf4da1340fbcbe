"""Acceptance criteria 1-9. Each test records a one-line verdict shown in the terminal summary."""

import json
import time

import pytest

from conftest import record_criterion
from ringlab.checks import CHECKS
from ringlab.cli import main
from ringlab.constructions import quotient_ring
from ringlab.corpus import build_corpus
from ringlab.dsl import format_canonical, parse_ring_expr
from ringlab.fixtures import format_witness, get_fixture, load_registry, run_fixture
from ringlab.harness import VACUOUS, run_check, symbolic_exactness, validate_report
from ringlab.ideals import IMPLICATIONS, all_ideals, char_crosscheck, lattice_violations
from ringlab.modules import SUB_IMPLICATIONS, all_submodules, verify_module_axioms
from ringlab.ring import ring_flags, verify_ring_axioms
from ringlab.symbolic.rings import SymRing, bounded_ideal_search, cchar_closed_form, sym_ideal_from_comps

MUST_HIT = ("T_char", "C_coro", "P_inters", "P_Ca2", "T_ca1", "L_red", "T_a1", "T_a2", "P_ide",
            "T_amalg", "C_dup1", "C_dup2", "P_eqM", "T_IM", "C_NM", "L_smith")
NEGATIVE = ("NC_quotient1", "NC_quotient2", "NC_ca1_converse")


@pytest.fixture(scope="module")
def verify_runs():
    """Two consecutive `verify --suite all --format json` runs through the CLI."""
    outs = []
    for _ in range(2):
        buf = __import__("io").StringIO()
        t0 = time.perf_counter()
        code = main(["verify", "--suite", "all", "--format", "json"], out=buf)
        outs.append((code, buf.getvalue(), time.perf_counter() - t0))
    return outs


def test_criterion_1_axioms(default_spec):
    t0 = time.perf_counter()
    C = build_corpus(default_spec)
    build_s = time.perf_counter() - t0
    bad = [e for e, R in C.rings if verify_ring_axioms(R)]
    bad += [label for label, M in C.modules if verify_module_axioms(M)]
    quotients = 0
    for e, R in C.small(16):
        for I in all_ideals(R):
            if I.is_proper and I.mask != 1:
                Q, _ = quotient_ring(R, I)
                quotients += 1
                if verify_ring_axioms(Q):
                    bad.append(f"{e}/{I.describe()}")
    ok = not bad and not C.skipped and build_s < 60 and len(C.rings) >= 200
    record_criterion(1, ok, f"{len(C.rings)} rings, {len(C.modules)} modules, {quotients} quotients verified; "
                            f"build {build_s:.1f}s; failures {len(bad)}")
    assert not C.skipped
    assert not bad
    assert build_s < 60


def test_criterion_2_oracle_equivalence(corpus):
    proper = disagreements = 0
    for _, R in corpus.rings:
        for I in all_ideals(R):
            if not I.is_proper:
                continue
            proper += 1
            try:
                char_crosscheck(I)
            except AssertionError:
                disagreements += 1
    record_criterion(2, disagreements == 0, f"{proper} proper ideals, {disagreements} disagreements "
                                            "(definition, radical, nonzero square, k-power for k in 2, 3, |R|)")
    assert proper > 1000 and disagreements == 0


def test_criterion_3_every_finite_ring_uz(corpus):
    not_uz, not_r, checked = [], [], 0
    for e, R in corpus.rings:
        if not ring_flags(R).is_uz:
            not_uz.append(e)
        for I in all_ideals(R):
            if I.is_proper:
                checked += 1
                if not (I.flags.is_r and I.flags.is_semi_r):
                    not_r.append((e, I.describe()))
    t_every = run_check(CHECKS["T_every"], corpus)
    ok = not not_uz and not not_r and t_every.status != "Refuted"
    record_criterion(3, ok, f"{len(corpus.rings)} rings uz, {checked} proper ideals r and semi r; "
                            f"T_every {t_every.status} ({t_every.hypothesis_hits} hits)")
    assert ok


def test_criterion_4_implication_lattice(corpus):
    ideals = subs = 0
    bad = []
    for e, R in corpus.rings:
        for I in all_ideals(R):
            ideals += 1
            if lattice_violations(I.flags):
                bad.append((e, I.describe()))
    for label, M in corpus.modules:
        for N in all_submodules(M):
            subs += 1
            f = N.flags
            if any(f.get(a) and not f.get(b) for a, b in SUB_IMPLICATIONS):
                bad.append((label, N.describe()))
    edges = ", ".join(f"{a[3:]}=>{b[3:]}" for a, b in IMPLICATIONS)
    record_criterion(4, not bad, f"{ideals} ideals, {subs} submodules, {len(bad)} violations of {edges} "
                                 "and the submodule edges")
    assert not bad
    for edge in [("prime", "semiprime"), ("semiprime", "semi_r"), ("r", "semi_r"), ("r", "pr"),
                 ("n", "semi_n"), ("semi_n", "semi_r")]:
        assert tuple("is_" + x for x in edge) in IMPLICATIONS


def test_criterion_5_theorem_suite(verify_runs):
    code, text, secs = verify_runs[0]
    doc = validate_report(text)
    recs = {r["id"]: r for r in doc["records"]}
    regular = [r for i, r in recs.items() if CHECKS[i].expect == "hold"]
    refuted = [r["id"] for r in regular if r["status"] == "Refuted"]
    statuses_ok = all(r["status"] in ("Proved", VACUOUS) for r in regular)
    no_hits = [i for i in MUST_HIT if recs[i]["hypothesis_hits"] == 0]
    ok = code == 0 and statuses_ok and not refuted and not no_hits and secs < 300
    record_criterion(5, ok, f"{len(regular)} checks Proved or vacuous, refuted {refuted or 'none'}, "
                            f"16 listed checks with hits > 0: {not no_hits}, {secs:.0f}s")
    assert set(CHECKS) == set(recs)
    assert statuses_ok and not refuted
    assert not no_hits
    assert code == 0
    assert secs < 300


def _claim(fid, predicate, ring=None):
    rec = get_fixture(fid)
    c = next(c for c in rec.claims if c.predicate == predicate and (ring is None or c.ring == ring))
    return next(r for r in run_fixture(rec).results if r.claim is c)


def test_criterion_6_fixtures():
    t0 = time.perf_counter()
    results = [r for rec in load_registry() for r in run_fixture(rec).results]
    expect = [
        (_claim("zn_p2q", "semi_r"), "Proved", None),
        (_claim("zn_p2q", "semi_n"), "Refuted", None),
        (_claim("zn_p2q", "semiprime"), "Refuted", None),
        (_claim("boolean_cube", "semi_r"), "Proved", None),
        (_claim("boolean_cube", "prime"), "Refuted", None),
        (_claim("quot_8Z_16Z", "semi_r", "ZZ"), "Refuted", "4"),
        (_claim("quot_8Z_16Z", "semi_r", "Z16"), "Proved", None),
        (_claim("ca1_converse", "semi_r", "ZZ x ZZ"), "Proved", None),
        (_claim("product_4Zx6Z", "semi_r"), "Refuted", "(2,6)"),
        (_claim("idz_Z_Z4", "semi_r", "idz(ZZ, Z4)"), "Proved", None),
        (_claim("idz_Z_Z4", "semi_r", "ZZ"), "Refuted", None),
        (_claim("zxz_6z0", "semi_r"), "Proved", None),
        (_claim("zxz_6z0", "r"), "Refuted", "(2,(3,0))"),
        (_claim("zxz_6z0", "sr_intro"), "Refuted", "(2,(3,0))"),
        (_claim("z8xz_4bar0", "semi_r"), "Proved", None),
        (_claim("z8xz_4bar0", "semiprime"), "Refuted", "(2,(1,0))"),
        (_claim("x_squared", "semi_r"), "Refuted", "x"),
    ]
    xr = get_fixture("x_plus_4")
    x4 = next(r for r in run_fixture(xr).results if r.claim.gens == ((0, 1), 4))
    expect.append((x4, "Refuted", "2+x"))
    secs = time.perf_counter() - t0
    mismatches = [r.claim.describe() for r in results if not r.matches]
    wrong = []
    for r, status, wit in expect:
        got = format_witness(r.claim, r.verdict.witness) if r.verdict.witness is not None else None
        if r.verdict.status != status or (wit is not None and got != wit):
            wrong.append((r.claim.describe(), r.verdict.status, got))
    ok = not mismatches and not wrong and secs < 10
    record_criterion(6, ok, f"{len(results)} fixture claims, {len(expect)} headline verdicts, "
                            f"{len(mismatches) + len(wrong)} mismatches, {secs:.1f}s")
    assert not mismatches, mismatches
    assert not wrong, wrong
    assert secs < 10


def test_criterion_7_negative_controls(verify_runs):
    doc = json.loads(verify_runs[0][1])
    recs = {r["id"]: r for r in doc["records"]}
    want = {
        "NC_quotient1": "I=4Z(+)1Z4, J=0Z(+)Z4",
        "NC_quotient2": "I=8Z, J=16Z",
        "NC_ca1_converse": "I=4Z x 0Z",
    }
    got = {i: (recs[i]["status"], recs[i]["witness"]) for i in NEGATIVE}
    ok = all(s == "Refuted" and w and want[i] in w for i, (s, w) in got.items())
    record_criterion(7, ok, "; ".join(f"{i} {s}: {w}" for i, (s, w) in got.items()))
    for i, (s, w) in got.items():
        assert s == "Refuted", i
        assert want[i] in w, (i, w)


def test_criterion_8_symbolic_exactness():
    objects, comparisons, bad = symbolic_exactness(height=10)
    R = SymRing((0, 0), label="ZZ x ZZ")
    cchar_bad = []
    for n1 in range(0, 13):
        for n2 in range(0, 13):
            I = sym_ideal_from_comps(R, (n1, n2))
            if not I.is_proper:
                continue
            closed = cchar_closed_form(I)
            # height 12: a refutation of n1Z x n2Z may need a coordinate equal to n_i
            bounded = not bounded_ideal_search(I, "semi_r", 12).refuted
            if closed != bounded:
                cchar_bad.append((n1, n2))
    ok = not bad and not cchar_bad
    record_criterion(8, ok, f"{objects} registry objects, {comparisons} exact-vs-bounded comparisons at "
                            f"height 10, {len(bad)} contradictions; n1Z x n2Z closed form vs bounded search "
                            f"at height 12 (n_i <= 12): {len(cchar_bad)} mismatches")
    assert not bad, bad
    assert not cchar_bad, cchar_bad


def test_criterion_9_determinism(verify_runs):
    from hypothesis import HealthCheck, given, settings

    from test_dsl import ring_asts

    (c1, a, _), (c2, b, _) = verify_runs
    same = a == b and c1 == c2
    count = {"n": 0}

    @settings(max_examples=1000, deadline=None, database=None,
              suppress_health_check=list(HealthCheck))
    @given(ring_asts)
    def roundtrip(ast):
        count["n"] += 1
        text = format_canonical(ast)
        assert parse_ring_expr(text) == ast
        assert format_canonical(parse_ring_expr(text)) == text

    roundtrip_ok = True
    try:
        roundtrip()
    except AssertionError:
        roundtrip_ok = False
    ok = same and roundtrip_ok and count["n"] >= 1000
    record_criterion(9, ok, f"two verify runs byte-identical: {same} ({len(a)} bytes); "
                            f"DSL round trip on {count['n']} generated ASTs: {roundtrip_ok}")
    assert same
    assert roundtrip_ok
    assert count["n"] >= 1000
