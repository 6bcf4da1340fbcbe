"""Infinite carriers: finite products of Z and Z_m, the idealization Z(+)Z_k,
and Z[x] through oracle ideals.

Ideals of a product are products of ideals, so an ideal is stored as one
integer per factor: n for nZ, and a divisor d of m for dZ_m. Over Z(+)Z_k an
ideal is nZ(+)dZ_k with d | gcd(n, k).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from sympy import factorint

from ..verdict import BoundedNoCounterexample, Proved, Refuted
from .poly import PolyIdeal, format_poly, pmul, poly_ideal_from_gens, trim

DEFAULT_HEIGHT = 10


class SymbolicError(ValueError):
    pass


# arithmetic helpers ---------------------------------------------------------

def is_squarefree(n):
    n = abs(n)
    return n != 0 and all(e == 1 for e in factorint(n).values())


def half_root(n):
    """Least positive a with n | a^2: the product of p^ceil(e/2)."""
    out = 1
    for p, e in factorint(abs(n)).items():
        out *= p ** ((e + 1) // 2)
    return out


def int_order(h):
    out = [0]
    for k in range(1, h + 1):
        out += [k, -k]
    return out


def residue_order(m, h):
    """Residues mod m in height order, each represented by its least |rep|."""
    seen, out = set(), []
    for v in int_order(h):
        r = v % m
        if r not in seen:
            seen.add(r)
            out.append((r, abs(v)))
    return out


# rings and ideals -----------------------------------------------------------

@dataclass(frozen=True)
class SymRing:
    factors: tuple = ()     # 0 for Z, m >= 2 for Z_m
    idz: int | None = None  # Z(+)Z_k
    poly: str | None = None
    label: str = ""

    @property
    def kind(self):
        if self.poly:
            return "poly"
        if self.idz is not None:
            return "idz"
        return "product"

    @property
    def order(self):
        return None

    def __repr__(self):
        return f"SymRing({self.label})"


def sym_ring_from_ast(e):
    from ..dsl import ZZ, ElaborationError, Idz, PolyFix, Prod, ZMod, format_canonical

    label = format_canonical(e)
    if isinstance(e, ZZ):
        return SymRing((0,), label=label)
    if isinstance(e, Prod) and all(isinstance(f, (ZZ, ZMod)) for f in e.factors):
        facs = tuple(0 if isinstance(f, ZZ) else f.n for f in e.factors)
        if any(f == 1 for f in facs):
            raise ElaborationError("Z1 is the zero ring")
        return SymRing(facs, label=label)
    if isinstance(e, Idz) and isinstance(e.ring, ZZ) and len(e.module) == 1 and isinstance(e.module[0], ZMod):
        return SymRing((0,), idz=e.module[0].n, label=label)
    if isinstance(e, PolyFix):
        if e.name != "Zx":
            raise ElaborationError(f"unknown polynomial fixture {e.name!r} (known: Zx)")
        return SymRing(poly="Zx", label=label)
    raise ElaborationError(f"{label}: not supported in the symbolic tier "
                           "(products of ZZ and Zn, idz(ZZ, Zk), polyfix:Zx)")


@dataclass(frozen=True)
class SymIdeal:
    ring: SymRing
    comps: tuple = ()
    oracle: PolyIdeal | None = None

    def describe(self):
        R = self.ring
        if R.kind == "poly":
            return self.oracle.describe()
        if R.kind == "idz":
            n, d = self.comps
            return f"{n}Z(+){d}Z{R.idz}"
        parts = []
        for f, c in zip(R.factors, self.comps):
            parts.append(f"{c}Z" if f == 0 else f"{c}Z{f}")
        return " x ".join(parts)

    def __repr__(self):
        return f"SymIdeal({self.describe()} in {self.ring.label})"

    @property
    def is_proper(self):
        R = self.ring
        if R.kind == "poly":
            return self.oracle.is_proper
        if R.kind == "idz":
            return self.comps[0] != 1
        return any(c != 1 for c in self.comps)

    def __contains__(self, a):
        return sym_membership(self, a)


def _as_tuple(a, k):
    if isinstance(a, int):
        a = (a,)
    a = tuple(a)
    if len(a) != k:
        raise SymbolicError(f"element {a} does not match a carrier with {k} components")
    return a


def sym_ideal(R, gens):
    """The ideal generated by gens (elements as ints or tuples)."""
    gens = list(gens)
    if R.kind == "poly":
        try:
            return SymIdeal(R, oracle=poly_ideal_from_gens(gens))
        except ValueError as exc:
            raise SymbolicError(str(exc)) from None
    if R.kind == "idz":
        k = R.idz
        pairs = [_as_tuple(g, 2) for g in gens]
        n = 0
        for a, _ in pairs:
            n = gcd(n, a)
        d = gcd(k, n)
        for _, m in pairs:
            d = gcd(d, m)
        return SymIdeal(R, (n, d))
    comps = []
    vecs = [_as_tuple(g, len(R.factors)) for g in gens]
    for i, f in enumerate(R.factors):
        g = 0
        for v in vecs:
            g = gcd(g, v[i])
        comps.append(g if f == 0 else gcd(g, f))
    return SymIdeal(R, tuple(comps))


def sym_ideal_from_comps(R, comps):
    if R.kind == "product":
        comps = tuple(c if f == 0 else gcd(c, f) for f, c in zip(R.factors, comps))
    return SymIdeal(R, tuple(comps))


def _in_comp(f, c, a):
    if f == 0:
        return a == 0 if c == 0 else a % c == 0
    return a % c == 0


def sym_membership(I, a):
    R = I.ring
    if R.kind == "poly":
        return trim(a) in I.oracle
    if R.kind == "idz":
        a, m = _as_tuple(a, 2)
        n, d = I.comps
        return _in_comp(0, n, a) and (m % R.idz) % d == 0
    a = _as_tuple(a, len(R.factors))
    return all(_in_comp(f, c, x) for f, c, x in zip(R.factors, I.comps, a))


def sym_mul(R, a, b):
    if R.kind == "poly":
        return pmul(trim(a), trim(b))
    if R.kind == "idz":
        (x, m), (y, n) = _as_tuple(a, 2), _as_tuple(b, 2)
        return (x * y, (x * n + y * m) % R.idz)
    a, b = _as_tuple(a, len(R.factors)), _as_tuple(b, len(R.factors))
    return tuple(x * y if f == 0 else (x * y) % f for f, x, y in zip(R.factors, a, b))


def sym_is_regular(R, a):
    """Ann(a) = 0."""
    if R.kind == "poly":
        return bool(trim(a))
    if R.kind == "idz":
        x, _ = _as_tuple(a, 2)
        return x != 0 and gcd(x, R.idz) == 1
    a = _as_tuple(a, len(R.factors))
    return all((x != 0) if f == 0 else gcd(x, f) == 1 for f, x in zip(R.factors, a))


def format_sym_elem(R, a):
    if R.kind == "poly":
        return format_poly(a)
    if isinstance(a, tuple):
        if len(a) == 1:
            return str(a[0])
        return "(" + ",".join(str(v) for v in a) + ")"
    return str(a)


# exact classification -------------------------------------------------------

@dataclass(frozen=True)
class SymClassification:
    flags: dict
    witnesses: dict = field(default_factory=dict)
    mode: str = "exact"

    def get(self, name):
        name = name[3:] if name.startswith("is_") else name
        return self.flags[name]


def _unit_elem(R):
    return tuple(1 for _ in R.factors)


def _flat(R, v):
    """Single-factor carriers use plain integers as elements."""
    if isinstance(v, tuple) and len(v) == 1 and R.kind == "product":
        return v[0]
    return v


def _factor_options(f, c):
    """(value in I, value out of I) for a regular component with square in I; None if impossible."""
    if f == 0:
        in_val = c if c >= 1 else None
        out_val = half_root(c) if c >= 2 and not is_squarefree(c) else None
        return in_val, out_val
    # over Z_f only units are regular and a unit square is only in the unit ideal
    return (1 if c == 1 else None), None


def _product_semi_r(I):
    R = I.ring
    opts = [_factor_options(f, c) for f, c in zip(R.factors, I.comps)]
    if any(i is None and o is None for i, o in opts):
        return True, None
    if all(o is None for _, o in opts):
        return True, None
    return False, _flat(R, tuple(o if o is not None else i for i, o in opts))


def _product_semiprime(I):
    R = I.ring
    for j, c in enumerate(I.comps):
        # nZ and dZ_m are radical exactly when the modulus is squarefree (0 counts as radical)
        if c >= 2 and not is_squarefree(c):
            w = [0] * len(R.factors)
            w[j] = half_root(c)
            return False, _flat(R, tuple(w))
    return True, None


def _product_r(I):
    R = I.ring
    for j, (f, c) in enumerate(zip(R.factors, I.comps)):
        if f == 0 and c >= 2:
            a = list(_unit_elem(R))
            a[j] = c
            b = [0] * len(R.factors)
            b[j] = 1
            return False, (_flat(R, tuple(a)), _flat(R, tuple(b)))
    return True, None


def _is_prime_number(n):
    return n >= 2 and sum(factorint(n).values()) == 1


def _product_prime(I):
    R = I.ring
    proper = [j for j, c in enumerate(I.comps) if c != 1]
    k = len(R.factors)

    def e(j, v=1):
        out = [0] * k
        out[j] = v
        return _flat(R, tuple(out))

    if len(proper) >= 2:
        return False, (e(proper[0]), e(proper[1]))
    j = proper[0]
    f, c = R.factors[j], I.comps[j]
    if (f == 0 and c == 0) or _is_prime_number(c):
        return True, None
    p = min(factorint(c))
    return False, (e(j, p), e(j, c // p))


def sym_classify(I):
    """Exact flags for ideals of products of Z and Z_m, and of Z(+)Z_k."""
    R = I.ring
    if R.kind == "poly":
        raise SymbolicError("Z[x] fixtures support witness mode only")
    if not I.is_proper:
        return SymClassification({"proper": False})
    if R.kind == "idz":
        n, _ = I.comps
        k = R.idz
        # a regular element (a, m) needs a != 0 and gcd(a, k) = 1, so n | a^2 forces gcd(n, k) = 1,
        # and then d | gcd(n, k) = 1: only the first coordinate can fail
        bad = n >= 2 and gcd(n, k) == 1 and not is_squarefree(n)
        flags = {"proper": True, "semi_r": not bad}
        wit = {"semi_r": (half_root(n), 0)} if bad else {}
        return SymClassification(flags, wit)
    flags, wit = {"proper": True}, {}
    for name, fn in (("semi_r", _product_semi_r), ("semiprime", _product_semiprime),
                     ("r", _product_r), ("prime", _product_prime)):
        ok, w = fn(I)
        flags[name] = ok
        if not ok:
            wit[name] = w
    return SymClassification(flags, wit)


def cchar_closed_form(I):
    """Product of domains: semi r iff some component is 0 or every proper component is squarefree."""
    R = I.ring
    if any(f != 0 for f in R.factors):
        raise SymbolicError("closed form applies to products of Z only")
    if any(c == 0 for c in I.comps):
        return True
    return all(c == 1 or is_squarefree(c) for c in I.comps)


# bounded search -------------------------------------------------------------

def element_stream(R, height, poly_degree=2):
    """Elements of R in (height, lexicographic) order, with their heights."""
    if R.kind == "poly":
        coeffs = list(enumerate(int_order(height)))
        items = []
        for combo in itertools.product(coeffs, repeat=poly_degree + 1):
            h = max(abs(v) for _, v in combo)
            items.append((h, tuple(i for i, _ in combo), trim(v for _, v in combo)))
        seen, out = set(), []
        for h, _, f in sorted(items):
            if f not in seen:
                seen.add(f)
                out.append((f, h))
        return out
    if R.kind == "idz":
        comps = [[(v, abs(v)) for v in int_order(height)], residue_order(R.idz, height)]
    else:
        comps = [[(v, abs(v)) for v in int_order(height)] if f == 0 else residue_order(f, height)
                 for f in R.factors]
    items = []
    for combo in itertools.product(*[list(enumerate(c)) for c in comps]):
        h = max(hv for _, (_, hv) in combo)
        items.append((h, tuple(i for i, _ in combo), tuple(v for _, (v, _) in combo)))
    items.sort()
    return [(_flat(R, v), h) for h, _, v in items]


def bounded_ideal_search(I, flag="semi_r", height=DEFAULT_HEIGHT):
    """First counterexample to flag with all components within height, else BoundedNoCounterexample."""
    R = I.ring
    elems = element_stream(R, height)
    if flag in ("semi_r", "semiprime"):
        for a, _ in elems:
            if flag == "semi_r" and not sym_is_regular(R, a):
                continue
            if sym_membership(I, sym_mul(R, a, a)) and not sym_membership(I, a):
                return Refuted(a)
        return BoundedNoCounterexample(height)
    if flag in ("r", "prime"):
        pairs = sorted(((max(ha, hb), i, j, a, b) for i, (a, ha) in enumerate(elems)
                        for j, (b, hb) in enumerate(elems)), key=lambda t: t[:3])
        for _, _, _, a, b in pairs:
            if not sym_membership(I, sym_mul(R, a, b)):
                continue
            if flag == "r" and sym_is_regular(R, a) and not sym_membership(I, b):
                return Refuted((a, b))
            if flag == "prime" and not sym_membership(I, a) and not sym_membership(I, b):
                return Refuted((a, b))
        return BoundedNoCounterexample(height)
    raise SymbolicError(f"no bounded search for flag {flag!r}")


def decide_ideal(I, flag="semi_r", height=DEFAULT_HEIGHT):
    """Exact verdict where available (cross-checked by bounded search), else bounded search."""
    R = I.ring
    if R.kind == "poly":
        o = I.oracle
        if o.kind == "monic" and len(o.g) == 2 and o.k == 1 and flag in ("semi_r", "semiprime", "prime"):
            # Z[x]/<x - c> is Z, so <x - c> is prime
            bounded = bounded_ideal_search(I, flag, height if flag != "prime" else min(height, 2))
            if bounded.refuted:
                raise SymbolicError(f"bounded search contradicts primality of {I!r}: {bounded.witness}")
            return Proved()
        return bounded_ideal_search(I, flag, height)
    cls = sym_classify(I)
    if not cls.flags.get("proper", True):
        raise SymbolicError("the ideal is not proper")
    if flag not in cls.flags:
        return bounded_ideal_search(I, flag, height)
    bounded = bounded_ideal_search(I, flag, height if flag in ("semi_r", "semiprime") else min(height, 4))
    if cls.flags[flag] and bounded.refuted:
        raise SymbolicError(f"bounded search contradicts exact {flag} on {I!r}: {bounded.witness}")
    return Proved() if cls.flags[flag] else Refuted(cls.witnesses[flag])


def witness_holds(I, flag, witness):
    """Does the witness satisfy the hypotheses and violate the conclusion of flag?"""
    R = I.ring
    if flag == "semi_r":
        a = witness
        return sym_is_regular(R, a) and sym_membership(I, sym_mul(R, a, a)) and not sym_membership(I, a)
    if flag == "semiprime":
        a = witness
        return sym_membership(I, sym_mul(R, a, a)) and not sym_membership(I, a)
    if flag == "r":
        a, b = witness
        return sym_is_regular(R, a) and sym_membership(I, sym_mul(R, a, b)) and not sym_membership(I, b)
    if flag == "prime":
        a, b = witness
        return sym_membership(I, sym_mul(R, a, b)) and not (sym_membership(I, a) or sym_membership(I, b))
    if flag == "proper":
        return sym_membership(I, witness) and sym_is_regular(R, witness) and _is_unit(R, witness)
    raise SymbolicError(f"unknown flag {flag!r}")


def _is_unit(R, a):
    if R.kind == "poly":
        return trim(a) in ((1,), (-1,))
    if R.kind == "idz":
        return _as_tuple(a, 2)[0] in (1, -1)
    return all((x in (1, -1)) if f == 0 else gcd(x, f) == 1
               for f, x in zip(R.factors, _as_tuple(a, len(R.factors))))
