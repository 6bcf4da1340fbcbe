"""The instance corpus the theorem checks range over.

A CorpusSpec is just an ordered list of ring expressions plus a switch for the
symbolic registry; everything else (ideals, modules, quotients, homs) is
derived from the built rings on demand and cached on the Corpus object.
"""

from __future__ import annotations

import hashlib
from math import gcd
from dataclasses import dataclass, field
from functools import cached_property

from .dsl import elaborate, parse_ring_expr
from .ideals import all_ideals
from .modules import build_module

SYMBOLIC_DIRECTIVE = "%symbolic"


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def default_expressions():
    out = [f"Z{n}" for n in range(2, 37)]
    for a in range(2, 33):
        for b in range(2, 33):
            if a * b <= 64:
                out.append(f"Z{a} x Z{b}")
    for k in (3, 4):
        out.append(" x ".join(["Z2"] * k))
    for n in range(2, 33):
        for d in _divisors(n):
            if d > 1 and n * d <= 64:
                out.append(f"idz(Z{n}, Z{d})")
    for n in range(2, 9):
        for d in _divisors(n):
            out.append(f"dup(Z{n}, <{d % n}>)")
    seen, uniq = set(), []
    for e in out:
        if e not in seen:
            seen.add(e)
            uniq.append(e)
    return tuple(uniq)


@dataclass(frozen=True)
class CorpusSpec:
    expressions: tuple
    symbolic: bool = True

    @property
    def digest(self):
        h = hashlib.sha256()
        for e in self.expressions:
            h.update(e.encode() + b"\n")
        h.update(b"symbolic" if self.symbolic else b"finite-only")
        return h.hexdigest()

    def __contains__(self, expr):
        return expr in self.expressions

    def __len__(self):
        return len(self.expressions)


def default_corpus():
    return CorpusSpec(default_expressions(), symbolic=True)


def read_corpus_file(path):
    """One ring expression per line; '#' starts a comment; '%symbolic' adds the symbolic registry."""
    exprs, symbolic = [], False
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line == SYMBOLIC_DIRECTIVE:
                symbolic = True
                continue
            parse_ring_expr(line)  # fail early with a position
            exprs.append(line)
    return CorpusSpec(tuple(exprs), symbolic)


@dataclass
class Corpus:
    """Built rings of a spec, with the derived families cached."""

    spec: CorpusSpec
    rings: list = field(default_factory=list)  # (expr, RingTable), finite only
    skipped: list = field(default_factory=list)  # (expr, reason)

    def by_kind(self, kind):
        return [(e, R) for e, R in self.rings if ring_kind(R) == kind]

    def small(self, limit):
        return [(e, R) for e, R in self.rings if R.order <= limit]

    @cached_property
    def modules(self):
        """(label, module) pairs: the self-module of each ring of order <= 32, and Z_d over Z_n."""
        out = []
        for e, R in self.rings:
            if R.order <= 32:
                out.append((f"self over {e}", build_module(R, "self")))
            if ring_kind(R) == "zn":
                for d in _divisors(R.order):
                    if 1 < d < R.order:
                        out.append((f"Z{d} over {e}", build_module(R, "cyclic", d=d)))
        return out


def ring_kind(R):
    if R.factors:
        return "product"
    if "idealization" in R.memo:
        return "idealization"
    if "amalgamation" in R.memo:
        return "amalgamation"
    if R.label.startswith("Z") and R.label[1:].isdigit():
        return "zn"
    return "other"


def build_corpus(spec):
    from .dsl import ElaborationError, is_symbolic
    from .ideals import CapacityError

    C = Corpus(spec)
    for e in spec.expressions:
        ast = parse_ring_expr(e)
        if is_symbolic(ast):
            C.skipped.append((e, "symbolic expressions belong to the symbolic tier"))
            continue
        try:
            C.rings.append((e, elaborate(ast, cap=64)))
        except (ElaborationError, CapacityError) as exc:
            C.skipped.append((e, str(exc)))
    return C


def warm(C):
    """Enumerate every ideal once, so later checks only hit caches."""
    for _, R in C.rings:
        all_ideals(R)
    return C


def symbolic_registry():
    """(label, object) pairs for the symbolic tier: every symbolic object a fixture names, plus
    the nZ of ZZ, a slice of ZZ x Zm and of idz(ZZ, Zk), and cyclic submodules of ZZ x ZZ."""
    from .dsl import is_symbolic
    from .fixtures import build_object, load_registry
    from .symbolic.rings import SymRing, sym_ideal_from_comps
    from .symbolic.zmodules import FGZModule, sym_submodule

    out, seen = [], set()

    def add(label, obj):
        key = (label, obj.describe())
        if key not in seen:
            seen.add(key)
            out.append((label, obj))

    for rec in load_registry():
        for c in rec.claims:
            if not is_symbolic(parse_ring_expr(c.ring)):
                continue
            carrier, obj = build_object(c)
            add(getattr(carrier, "label", "") or c.ring, obj)
    Z = SymRing((0,), label="ZZ")
    for n in range(0, 13):
        add("ZZ", sym_ideal_from_comps(Z, (n,)))
    for m in (4, 6):
        R = SymRing((0, m), label=f"ZZ x Z{m}")
        for a in (0, 2, 4, 6, 9, 12):
            for d in _divisors(m):
                add(R.label, sym_ideal_from_comps(R, (a, d)))
    for k in (2, 4, 6):
        A = SymRing((0,), idz=k, label=f"idz(ZZ, Z{k})")
        for n in (0, 2, 3, 4, 8, 9, 12):
            for d in _divisors(k):
                if gcd(n, k) % d == 0:  # n Z_k must sit inside d Z_k
                    add(A.label, sym_ideal_from_comps(A, (n, d % k)))
    M = FGZModule((0, 0), "ZZ x ZZ")
    for g in [(2, 0), (4, 0), (6, 0), (4, 6), (2, 2), (0, 9), (3, 5)]:
        add(M.label, sym_submodule(M, [g]))
    return out
