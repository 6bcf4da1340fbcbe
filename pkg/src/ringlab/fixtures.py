"""Registry of named example claims and the machinery that replays them.

A record bundles claims about one example; each claim names a carrier (ring
expression, optional module expression), an ideal or submodule by generators,
a predicate, the expected verdict and, for refutations, a witness. Symbolic
claims go through the exact deciders, finite ones through the table scans.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd

from .dsl import elaborate, elaborate_module, format_elem, is_symbolic, parse_gens, parse_modexpr, parse_ring_expr
from .ideals import classify_ideal
from .modules import classify_submodule, generate_submodule
from .symbolic.lattice import lcm
from .symbolic.rings import SymRing, decide_ideal, format_sym_elem, sym_ideal, witness_holds
from .symbolic.zmodules import decide_submodule, submodule_witness_holds, sym_submodule, zmodule_from_modexpr
from .verdict import BOUNDED, PROVED, REFUTED, Proved, Refuted, Verdict


class FixtureIntegrityError(AssertionError):
    pass


@dataclass(frozen=True)
class Claim:
    ring: str
    gens: object
    predicate: str
    expected: str
    witness: object = None
    module: str | None = None
    contract: tuple | None = None

    @property
    def kind(self):
        return "submodule" if self.module else "ideal"

    def describe(self):
        g = self.gens if isinstance(self.gens, str) else json.dumps(self.gens)
        where = f"{self.module} over {self.ring}" if self.module else self.ring
        pre = f"contraction of {g}" if self.contract else g
        return f"{self.predicate}({pre} in {where})"


@dataclass(frozen=True)
class FixtureRecord:
    id: str
    anchor: str
    scope: str
    claims: tuple = ()

    @property
    def in_scope(self):
        return self.scope != "out"


@dataclass
class ClaimResult:
    claim: Claim
    verdict: Verdict
    matches: bool
    note: str = ""


@dataclass
class FixtureResult:
    record: FixtureRecord
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.matches for r in self.results)


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def _claim_from_json(d):
    return Claim(ring=d["ring"], gens=_tuplify(d["gens"]) if not isinstance(d["gens"], str) else d["gens"],
                 predicate=d["predicate"], expected=d["expected"], witness=_tuplify(d.get("witness")),
                 module=d.get("module"), contract=_tuplify(d.get("contract")))


@lru_cache(maxsize=1)
def load_registry():
    text = resources.files("ringlab").joinpath("data/fixtures.json").read_text()
    out = []
    for d in json.loads(text):
        out.append(FixtureRecord(d["id"], d["anchor"], d["scope"],
                                 tuple(_claim_from_json(c) for c in d["claims"])))
    ids = [r.id for r in out]
    if len(set(ids)) != len(ids):
        raise FixtureIntegrityError("duplicate fixture ids")
    return tuple(out)


def get_fixture(fid):
    for r in load_registry():
        if r.id == fid:
            return r
    raise KeyError(f"unknown fixture {fid!r}")


# building objects -----------------------------------------------------------

def _sym_gens(gens):
    if isinstance(gens, str):
        return [_elem_value(g) for g in parse_gens(gens)]
    return list(gens)


def _elem_value(e):
    return tuple(_elem_value(x) for x in e) if isinstance(e, tuple) else e


def _contract(I, v):
    """phi^-1(I) for phi: Z -> R, x -> x*v, as an ideal of Z."""
    g = 1
    for c, vi in zip(I.comps, v):
        if vi == 0:
            continue
        need = 0 if c == 0 else c // gcd(c, vi)
        g = lcm(g, need) if need else 0
        if g == 0:
            break
    Z = SymRing((0,), label="ZZ")
    return sym_ideal(Z, [g])


def build_object(claim):
    """(carrier, object) for a claim: a finite Ideal/Submodule or a symbolic one."""
    ast = parse_ring_expr(claim.ring)
    R = elaborate(ast)
    if claim.module:
        mexpr = parse_modexpr(claim.module)
        if is_symbolic(ast):
            M = zmodule_from_modexpr(mexpr)
            return M, sym_submodule(M, _sym_gens(claim.gens))
        M = elaborate_module(R, mexpr)
        return M, generate_submodule(M, [M.element(format_elem(g)) for g in parse_gens(claim.gens)])
    if isinstance(R, SymRing):
        I = sym_ideal(R, _sym_gens(claim.gens))
        if claim.contract:
            I = _contract(I, claim.contract)
            return I.ring, I
        return R, I
    from .dsl import resolve_gens

    return R, resolve_gens(R, parse_gens(claim.gens))


# evaluation -----------------------------------------------------------------

def _finite_witness(R, w, M=None):
    if M is not None:
        if isinstance(w[1], str):  # D witness: (r, K)
            return (R.names[w[0]], w[1])
        return (R.names[w[0]], M.names[w[1]])
    if len(w) == 1:
        return R.names[w[0]]
    return tuple(R.names[x] for x in w)


def evaluate_claim(claim):
    """Decide the claim's predicate on its object from scratch."""
    carrier, obj = build_object(claim)
    name = claim.predicate
    if claim.module:
        if hasattr(obj, "basis"):
            return decide_submodule(obj, name)
        flags = classify_submodule(obj)
        if flags.get(name):
            return Proved()
        return Refuted(_finite_witness(obj.module.ring, flags.witnesses.get(name), obj.module))
    if isinstance(carrier, SymRing):
        if name == "proper":
            return Proved() if obj.is_proper else Refuted(1)
        return decide_ideal(obj, name)
    flags = classify_ideal(obj)
    if name == "proper":
        return Proved() if flags.is_proper else Refuted(carrier.names[carrier.one])
    if flags.get(name):
        return Proved()
    return Refuted(_finite_witness(carrier, flags.witnesses.get(name)))


def stored_witness_holds(claim):
    """Do the stored witness's hypotheses hold and its conclusion fail, straight from the definition?"""
    carrier, obj = build_object(claim)
    w = claim.witness
    name = claim.predicate
    if claim.module:
        if hasattr(obj, "basis"):
            return submodule_witness_holds(obj, name, w)
        M = obj.module
        R = M.ring
        r, m = R.element(w[0]), M.element(w[1])
        return _finite_sub_witness(obj, name, r, m)
    if isinstance(carrier, SymRing):
        return witness_holds(obj, name, w)
    R = carrier
    if name == "proper":
        return R.element(w) in obj and R.element(w) == R.one
    idx = tuple(R.element(x) for x in w) if isinstance(w, tuple) else R.element(w)
    return _finite_ideal_witness(obj, name, idx)


def _finite_ideal_witness(I, name, w):
    from .ideals import radical

    R = I.ring
    reg = lambda a: bool(R.reg[a])
    nil = lambda a: bool(R.nil_mask >> a & 1)
    if name in ("semiprime", "semi_r", "semi_n"):
        a = w
        sq = int(R.mul[a, a])
        hyp = {"semiprime": True, "semi_r": reg(a), "semi_n": not nil(a)}[name]
        return sq in I and hyp and a not in I
    a, b = w
    ab = int(R.mul[a, b])
    if name == "r":
        return ab in I and reg(a) and b not in I
    if name == "pr":
        return ab in I and reg(a) and b not in radical(I)
    if name == "n":
        return ab in I and not nil(a) and b not in I
    if name == "prime":
        return ab in I and a not in I and b not in I
    raise FixtureIntegrityError(f"no witness semantics for {name!r}")


def _finite_sub_witness(N, name, r, m):
    from .modules import colon_rm

    M = N.module
    rm = int(M.action[r, m])
    r2 = int(M.ring.mul[r, r])
    r2m = int(M.action[r2, m])
    inj = bool(M.injective_scalars[r])
    faithful = bool(M.faithful_elements[m])
    col = r in colon_rm(N)
    inN = lambda x: bool(N.inside[x])
    return {
        "semiprime": inN(r2m) and not inN(rm),
        "r": inN(rm) and inj and not inN(m),
        "sr_intro": inN(rm) and faithful and not col,
        "sr_alt": inN(rm) and faithful and not inN(m),
        "semi_r": inN(r2m) and inj and faithful and not inN(rm),
        "prime": inN(rm) and not inN(m) and not col,
    }[name]


def _poly_mode(claim):
    return claim.ring.startswith("polyfix:")


def check_claim(claim):
    """ClaimResult: the computed verdict against the expectation (status, and witness for exact modes)."""
    if claim.expected == REFUTED:
        if claim.witness is None:
            raise FixtureIntegrityError(f"{claim.describe()}: refutation without a witness")
        if not stored_witness_holds(claim):
            raise FixtureIntegrityError(f"{claim.describe()}: stored witness {claim.witness!r} does not refute")
    v = evaluate_claim(claim)
    if claim.expected == REFUTED and _poly_mode(claim):
        # witness mode: any bounded refutation agrees; report the stored witness
        ok = v.status == REFUTED
        return ClaimResult(claim, Refuted(claim.witness) if ok else v, ok,
                           f"bounded search found {v.witness!r}" if ok else "")
    if v.status != claim.expected:
        return ClaimResult(claim, v, False, f"expected {claim.expected}")
    if v.status == REFUTED and _norm(v.witness) != _norm(claim.witness):
        return ClaimResult(claim, v, False, f"witness {v.witness!r} differs from stored {claim.witness!r}")
    return ClaimResult(claim, v, True)


def _norm(w):
    if isinstance(w, (list, tuple)):
        return tuple(_norm(x) for x in w)
    return w


def run_fixture(record):
    res = FixtureResult(record)
    for c in record.claims:
        res.results.append(check_claim(c))
    return res


def witness_check(record):
    """Headline verdict of a record: its first refuting claim, else Proved. Raises on a bad witness."""
    if not record.in_scope:
        return Verdict(BOUNDED, None, 0)
    res = run_fixture(record)
    if not res.ok:
        bad = next(r for r in res.results if not r.matches)
        raise FixtureIntegrityError(f"{record.id}: {bad.claim.describe()} gave {bad.verdict} ({bad.note})")
    for r in res.results:
        if r.verdict.status == REFUTED:
            return r.verdict
    return Proved()


def format_witness(claim, w):
    if w is None:
        return "-"
    if _poly_mode(claim):
        R = elaborate(claim.ring)
        return format_sym_elem(R, w)
    return _fmt(w)


def _fmt(w):
    if isinstance(w, (tuple, list)):
        return "(" + ",".join(_fmt(x) for x in w) + ")"
    return str(w)


__all__ = [
    "Claim", "FixtureRecord", "FixtureResult", "ClaimResult", "FixtureIntegrityError",
    "load_registry", "get_fixture", "build_object", "evaluate_claim", "stored_witness_holds",
    "check_claim", "run_fixture", "witness_check", "format_witness", "PROVED", "REFUTED",
]
