import io
import json
from pathlib import Path

import pytest

from ringlab.cli import main
from ringlab.harness import RECORD_KEYS, validate_report

GOLDEN = Path(__file__).parent / "golden"
SUITE = "T_char,C_coro,P_inters,T_every,P_eqM,NC_quotient1,NC_ca1_converse"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_table_golden():
    code, out, _ = run("verify", "--suite", SUITE, "--corpus", str(GOLDEN / "corpus.txt"))
    assert code == 0
    assert out == (GOLDEN / "verify_table.txt").read_text()


def test_verify_json_deterministic_and_valid(tmp_path):
    args = ("verify", "--suite", SUITE, "--corpus", str(GOLDEN / "corpus.txt"), "--format", "json")
    a = run(*args)[1]
    b = run(*args, "--report", str(tmp_path / "r.json"))[1]
    assert a == b == (tmp_path / "r.json").read_text()
    doc = validate_report(a)
    assert [r["id"] for r in doc["records"]] == sorted(SUITE.split(","))
    assert all(tuple(r) == RECORD_KEYS for r in doc["records"])


def test_verify_plot(tmp_path):
    png = tmp_path / "hits.png"
    code, _, _ = run("verify", "--suite", "T_char,P_inters", "--corpus", str(GOLDEN / "corpus.txt"),
                     "--plot", str(png))
    assert code == 0 and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_exit_one_on_refutation(tmp_path, monkeypatch):
    from ringlab import checks
    from ringlab.checks import Case, TheoremCheck

    def bad(corpus):
        yield Case(True, lambda: False, "Z4: I=<2>")

    monkeypatch.setitem(checks.CHECKS, "ZZ_bad", TheoremCheck("ZZ_bad", "toy", "toy", bad))
    code, out, _ = run("verify", "--suite", "ZZ_bad", "--corpus", str(GOLDEN / "corpus.txt"))
    assert code == 1 and "ZZ_bad witness: Z4: I=<2>" in out


def test_ideal_classify_golden():
    code, out, _ = run("ideal", "classify", "--ring", "Z12", "--gens", "<4>")
    assert code == 0 and out == (GOLDEN / "classify_z12_4.txt").read_text()
    code, out, _ = run("ideal", "classify", "--ring", "Z12", "--gens", "<4>", "--format", "json")
    rec = json.loads(out)
    assert rec["flags"]["semi_r"] is True and rec["flags"]["semi_n"] is False
    assert rec["witnesses"]["semi_n"] == ["2"]


def test_ideal_classify_symbolic():
    code, out, _ = run("ideal", "classify", "--ring", "ZZ x ZZ", "--gens", "<(4,6)>", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["flags"]["semi_r"] == "Refuted" and rec["witnesses"]["semi_r"] == ["(2,6)"]


def test_ideal_list_golden_and_filter():
    code, out, _ = run("ideal", "list", "--ring", "Z2 x Z4")
    assert code == 0 and out == (GOLDEN / "list_z2xz4.txt").read_text()
    code, out, _ = run("ideal", "list", "--ring", "Z12", "--filter", "semi_r & !semi_n", "--format", "json")
    assert [r["ideal"] for r in json.loads(out)["ideals"]] == ["<4>"]


def test_module_classify():
    code, out, _ = run("module", "classify", "--ring", "ZZ", "--module", "ZZ x ZZ", "--gens", "<(6,0)>",
                       "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["flags"]["semi_r"] and not rec["flags"]["r"]
    assert rec["witnesses"]["r"] == ["2", "(3,0)"]
    code, out, _ = run("module", "classify", "--ring", "Z12", "--module", "self", "--gens", "<4>")
    assert code == 0 and "semi_r       true" in out


def test_ring_info_and_construct():
    code, out, _ = run("ring", "info", "--ring", "Z12", "--format", "json")
    info = json.loads(out)
    assert info["order"] == 12 and info["uz"] and info["units"] == ["1", "5", "7", "11"]
    code, out, _ = run("construct", "--expr", "Z2 x Z2", "--show", "table")
    assert code == 0 and out.splitlines()[0].split() == ["+", "|", "(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    code, out, _ = run("construct", "--expr", "dup(Z4, <2>)", "--show", "flags")
    assert code == 0 and "order           8" in out


def test_search_exit_codes():
    code, out, _ = run("search", "--property", "r & !semi_r", "--max-order", "8", "--fail-on-hit")
    assert code == 0 and out.endswith("0 hit(s)\n")
    code, out, _ = run("search", "--property", "semi_r & !prime", "--max-order", "8", "--fail-on-hit")
    assert code == 1 and "Z2 x Z2 x Z2: <(0,0,1)>" in out
    code, _, _ = run("search", "--property", "semi_r & !prime", "--max-order", "8")
    assert code == 0


def test_fixtures_commands():
    code, out, _ = run("fixtures", "list")
    assert code == 0 and "zn_p2q" in out
    code, out, _ = run("fixtures", "run", "--id", "product_4Zx6Z")
    assert code == 0 and "witness (2,6) in ZZ x ZZ" in out
    code, out, _ = run("fixtures", "run", "--all", "--format", "json")
    assert code == 0 and all(r["match"] for r in json.loads(out))
    assert run("fixtures", "run")[0] == 2
    assert run("fixtures", "run", "--id", "nope")[0] == 2


@pytest.mark.parametrize("argv, code", [
    (["ring", "info", "--ring", "Zx"], 3),
    (["ring", "info", "--ring", "Z1"], 3),
    (["ideal", "classify", "--ring", "Z12", "--gens", "<13>"], 3),
    (["search", "--property", "semi_r &"], 3),
    (["verify", "--suite", "nope"], 2),
    (["ring"], 2),
    (["frobnicate"], 2),
    (["ideal", "classify", "--ring", "Z12"], 2),
])
def test_error_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_parse_error_reports_offset():
    code, _, err = run("ring", "info", "--ring", "Zx")
    assert code == 3 and "at offset 0" in err
