"""Running theorem checks, collecting verdicts, rendering reports, and
searching the corpus for objects with a given flag pattern."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .checks import CHECKS, SKIP
from .corpus import CorpusSpec, build_corpus, default_corpus
from .ideals import FLAG_NAMES, CapacityError, all_ideals
from .modules import SUBMODULE_FLAGS, all_submodules
from .verdict import PROVED, REFUTED

VACUOUS = "VacuousPass"
RECORD_KEYS = ("id", "anchor", "status", "instances", "hypothesis_hits", "skipped", "witness", "millis")


@dataclass
class CheckResult:
    id: str
    anchor: str
    scope: str
    status: str
    instances: int
    hypothesis_hits: int
    skipped: int
    witness: str | None
    millis: int
    expect: str = "hold"

    @property
    def ok(self):
        """Regular checks must not refute; a negative control must refute once its instances exist."""
        if self.expect == "refute":
            return self.status == REFUTED or self.hypothesis_hits == 0
        return self.status != REFUTED

    def record(self, timing=False):
        vals = {
            "id": self.id,
            "anchor": f"{self.anchor} [range: {self.scope}]",
            "status": self.status,
            "instances": self.instances,
            "hypothesis_hits": self.hypothesis_hits,
            "skipped": self.skipped,
            "witness": self.witness,
            "millis": self.millis if timing else 0,
        }
        return {k: vals[k] for k in RECORD_KEYS}


@dataclass
class SuiteReport:
    digest: str
    results: list = field(default_factory=list)
    wall_millis: int = 0

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def get(self, cid):
        return next(r for r in self.results if r.id == cid)


def check_ids():
    return sorted(CHECKS)


def _corpus(corpus):
    if corpus is None:
        corpus = default_corpus()
    if isinstance(corpus, CorpusSpec):
        corpus = build_corpus(corpus)
    return corpus


def run_check(check, corpus=None):
    """Exhaust one check over the corpus; the first failing instance becomes the witness."""
    if isinstance(check, str):
        try:
            check = CHECKS[check]
        except KeyError:
            raise KeyError(f"unknown check {check!r}") from None
    corpus = _corpus(corpus)
    t0 = time.perf_counter()
    instances = hits = skipped = 0
    witness = None
    gen = check.run(corpus)
    while True:
        try:
            case = next(gen)
        except StopIteration:
            break
        except CapacityError:
            # a derived object outgrew its cap; the rest of this generator is lost
            skipped += 1
            break
        if case is SKIP:
            skipped += 1
            continue
        instances += 1
        if not case.hyp:
            continue
        hits += 1
        if witness is None and not case.concl():
            witness = case.where() if callable(case.where) else str(case.where)
    if witness is not None:
        status = REFUTED
    elif hits == 0:
        status = VACUOUS
    else:
        status = PROVED
    millis = int((time.perf_counter() - t0) * 1000)
    return CheckResult(check.id, check.anchor, check.scope, status, instances, hits, skipped,
                       witness, millis, check.expect)


def thread_count():
    try:
        n = int(os.environ.get("RINGLAB_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def run_suite(corpus=None, ids=None, threads=None):
    corpus = _corpus(corpus)
    ids = check_ids() if ids is None else sorted(ids)
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check ids: {', '.join(unknown)}")
    t0 = time.perf_counter()
    n = thread_count() if threads is None else threads
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(lambda i: run_check(CHECKS[i], corpus), ids))
    else:
        results = [run_check(CHECKS[i], corpus) for i in ids]
    results.sort(key=lambda r: r.id)
    return SuiteReport(corpus.spec.digest, results, int((time.perf_counter() - t0) * 1000))


# reports ------------------------------------------------------------------------

def report_dict(report, timing=False):
    return {
        "corpus_digest": report.digest,
        "wall_millis": report.wall_millis if timing else 0,
        "records": [r.record(timing) for r in report.results],
    }


def report_json(report, timing=False):
    return json.dumps(report_dict(report, timing), indent=2, ensure_ascii=False) + "\n"


def load_schema():
    return json.loads(resources.files("ringlab").joinpath("data/report.schema.json").read_text())


def validate_report(doc):
    import jsonschema

    if isinstance(doc, str):
        doc = json.loads(doc)
    jsonschema.validate(doc, load_schema())
    for rec in doc["records"]:
        if tuple(rec) != RECORD_KEYS:
            raise jsonschema.ValidationError(f"record keys out of order: {tuple(rec)}")
    return doc


def report_table(report, timing=False):
    rows = [("id", "status", "instances", "hits", "skipped", "millis")]
    for r in report.results:
        rows.append((r.id, r.status, str(r.instances), str(r.hypothesis_hits), str(r.skipped),
                     str(r.millis if timing else 0)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for k, row in enumerate(rows):
        cells = [c.ljust(w) if i < 2 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    lines.append("")
    lines.append(f"corpus {report.digest[:16]}")
    for r in report.results:
        if r.witness is not None:
            lines.append(f"{r.id} witness: {r.witness}")
    return "\n".join(lines) + "\n"


# flag-expression search -----------------------------------------------------------

class FlagExprError(ValueError):
    pass


def parse_flag_expr(text, allowed):
    """Boolean expression over flag names with !, &, | and parentheses; returns a predicate on flags."""
    import re

    toks = re.findall(r"[A-Za-z_][A-Za-z_0-9]*|[!&|()]|\S", text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def disj():
        left = conj()
        while peek() == "|":
            take()
            right = conj()
            left = (lambda a, b: lambda f: a(f) or b(f))(left, right)
        return left

    def conj():
        left = unary()
        while peek() == "&":
            take()
            right = unary()
            left = (lambda a, b: lambda f: a(f) and b(f))(left, right)
        return left

    def unary():
        t = peek()
        if t == "!":
            take()
            inner = unary()
            return lambda f: not inner(f)
        if t == "(":
            take()
            inner = disj()
            if peek() != ")":
                raise FlagExprError(f"expected ')' at token {pos + 1} of {text!r}")
            take()
            return inner
        if t is None or not re.match(r"[A-Za-z_]", t):
            raise FlagExprError(f"expected a flag name at token {pos + 1} of {text!r}")
        take()
        if t not in allowed:
            raise FlagExprError(f"unknown flag {t!r}; known: {', '.join(allowed)}")
        return lambda f: bool(f.get(t))

    if not toks:
        raise FlagExprError("empty flag expression")
    pred = disj()
    if pos != len(toks):
        raise FlagExprError(f"unexpected {toks[pos]!r} at token {pos + 1} of {text!r}")
    return pred


def flag_names_in(text):
    import re

    return set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))


def search_kind(text):
    """Ideals unless the expression names a submodule-only flag."""
    names = flag_names_in(text)
    return "submodule" if names - set(FLAG_NAMES) and names <= set(SUBMODULE_FLAGS) else "ideal"


@dataclass(frozen=True)
class Hit:
    carrier: str
    obj: str

    def __str__(self):
        return f"{self.obj} in {self.carrier}"


def search_counterexamples(expr, corpus=None, max_order=None, kind=None):
    """All ideals (or submodules) of corpus objects whose flags satisfy expr, in corpus order."""
    kind = kind or search_kind(expr)
    allowed = FLAG_NAMES if kind == "ideal" else SUBMODULE_FLAGS
    pred = parse_flag_expr(expr, allowed)
    corpus = _corpus(corpus)
    out = []
    if kind == "ideal":
        for e, R in corpus.rings:
            if max_order is not None and R.order > max_order:
                continue
            for I in all_ideals(R):
                if pred(I.flags):
                    out.append(Hit(e, I.describe()))
    else:
        for label, M in corpus.modules:
            if max_order is not None and M.order > max_order:
                continue
            for N in all_submodules(M):
                if pred(N.flags):
                    out.append(Hit(label, N.describe()))
    return out


# symbolic exactness ---------------------------------------------------------------

def symbolic_exactness(height=10, registry=None):
    """Compare every exact symbolic verdict with bounded search at the given height.

    Returns (objects, comparisons, disagreements); a disagreement is (label, object, flag, detail).
    Z[x] objects have no exact classifier, so only their bounded element searches are run.
    """
    from .corpus import symbolic_registry
    from .symbolic.rings import SymIdeal, bounded_ideal_search, sym_classify, witness_holds
    from .symbolic.zmodules import sym_classify_submodule, submodule_witness_holds

    registry = symbolic_registry() if registry is None else registry
    comparisons, bad = 0, []
    for label, obj in registry:
        if isinstance(obj, SymIdeal):
            if not obj.is_proper:
                continue
            if obj.ring.kind == "poly":
                for flag in ("semi_r", "semiprime"):
                    bounded_ideal_search(obj, flag, height)
                    comparisons += 1
                continue
            cls = sym_classify(obj)
            for flag, exact in cls.flags.items():
                if flag == "proper":
                    continue
                comparisons += 1
                b = bounded_ideal_search(obj, flag, height)
                if exact and b.refuted:
                    bad.append((label, obj.describe(), flag, f"bounded search found {b.witness}"))
                elif not exact and not witness_holds(obj, flag, cls.witnesses[flag]):
                    bad.append((label, obj.describe(), flag, f"exact witness {cls.witnesses[flag]} fails"))
        else:
            try:
                cls = sym_classify_submodule(obj, height)  # raises on a contradicted Proved flag
            except Exception as exc:  # noqa: BLE001
                bad.append((label, obj.describe(), "*", str(exc)))
                continue
            for flag, exact in cls.flags.items():
                if flag == "proper":
                    continue
                comparisons += 1
                w = cls.witnesses.get(flag)
                if flag == "satisfies_D":
                    continue  # its witness is (r, K), replayed by the zmodules tests instead
                if not exact and w is not None and not submodule_witness_holds(obj, flag, w):
                    bad.append((label, obj.describe(), flag, f"witness {w} fails"))
    return len(registry), comparisons, bad
