"""Finitely generated Z-modules M = Z^n / K, K = diag(k_1..k_n) with k_i = 0
for a free coordinate. A submodule N is the lattice L = gens + K, kept in HNF.

Every decision goes through Q = Z^n / L = Z_{d_1} + ... + Z_{d_s} + Z^f,
read off a Smith form P L Q = D: v lies in L iff the coordinates of vQ are
divisible by the d_i and vanish past the rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np
from sympy import Matrix, factorint

from ..verdict import BoundedNoCounterexample, Proved, Refuted
from .lattice import hnf, hnf_pivots, in_lattice, lcm, smith
from .rings import DEFAULT_HEIGHT, SymbolicError, SymClassification, int_order, is_squarefree, residue_order


@dataclass(frozen=True)
class FGZModule:
    invariants: tuple
    label: str = ""

    @property
    def rank(self):
        return len(self.invariants)

    @property
    def free_coords(self):
        return tuple(i for i, k in enumerate(self.invariants) if k == 0)

    @property
    def torsion_exponent(self):
        """lcm of the torsion invariants, 1 when M is torsion-free."""
        e = 1
        for k in self.invariants:
            if k:
                e = lcm(e, k)
        return e

    def relations(self):
        return [[k if j == i else 0 for j in range(self.rank)] for i, k in enumerate(self.invariants) if k]

    def reduce(self, v):
        return tuple(x % k if k else x for x, k in zip(v, self.invariants))

    def is_torsion(self, v):
        return all(v[i] == 0 for i in self.free_coords)

    def injective(self, r):
        """Ann_M(r) = 0."""
        return r != 0 and gcd(r, self.torsion_exponent) == 1

    def format(self, v):
        if self.rank == 1:
            return str(v[0])
        return "(" + ",".join(str(x) for x in v) + ")"


def zmodule_from_modexpr(mexpr, label=""):
    from ..dsl import ZZ, ZMod, format_modexpr

    inv = []
    for f in mexpr:
        if f == "self" or isinstance(f, ZZ):
            inv.append(0)
        elif isinstance(f, ZMod):
            if f.n < 2:
                raise SymbolicError("Z1 is the zero module")
            inv.append(f.n)
    return FGZModule(tuple(inv), label or format_modexpr(mexpr))


@dataclass(frozen=True, eq=False)
class LatticeSubmodule:
    module: FGZModule
    basis: tuple  # HNF rows of L (relations included); canonical for the submodule
    gens: tuple = ()

    def __eq__(self, other):
        return isinstance(other, LatticeSubmodule) and other.module == self.module and other.basis == self.basis

    def __hash__(self):
        return hash((self.module, self.basis))

    def describe(self):
        if self.gens:
            return "<" + ",".join(self.module.format(g) for g in self.gens) + ">"
        return "<" + ",".join(self.module.format(r) for r in self.basis) + ">"

    def __repr__(self):
        return f"LatticeSubmodule({self.describe()} in {self.module.label})"

    def __contains__(self, v):
        return lattice_membership(self, v)

    @cached_property
    def smith(self):
        n = self.module.rank
        rows = [list(r) for r in self.basis] or [[0] * n]
        D, _, Q = smith(rows)
        return D, Q

    @property
    def quotient_torsion(self):
        return tuple(d for d in self.smith[0] if d > 1)

    @property
    def quotient_free_rank(self):
        return self.module.rank - len(self.smith[0])

    @property
    def quotient_exponent(self):
        e = 1
        for d in self.quotient_torsion:
            e = lcm(e, d)
        return e

    @property
    def is_proper(self):
        return self.quotient_free_rank > 0 or bool(self.quotient_torsion)

    @property
    def colon_generator(self):
        """c with (N :_Z M) = cZ."""
        return 0 if self.quotient_free_rank else self.quotient_exponent

    @property
    def free_projection(self):
        """Does N contain an element with a nonzero free coordinate?"""
        fc = self.module.free_coords
        return any(row[i] for row in self.basis for i in fc)

    @property
    def meets_torsion(self):
        """N meet T(M) != 0."""
        M = self.module
        fc, tc = M.free_coords, [i for i in range(M.rank) if M.invariants[i]]
        if not tc:
            return False
        order = list(fc) + tc
        perm = [[row[i] for i in order] for row in self.basis]
        H = hnf(perm, M.rank)
        for row in H:
            if all(row[j] == 0 for j in range(len(fc))):
                back = [0] * M.rank
                for j, i in enumerate(order):
                    back[i] = row[j]
                if any(M.reduce(back)):
                    return True
        return False


def sym_submodule(M, gens):
    gens = [tuple(int(x) for x in ((g,) if isinstance(g, int) else g)) for g in gens]
    if any(len(g) != M.rank for g in gens):
        raise SymbolicError(f"generators must have {M.rank} coordinates")
    return LatticeSubmodule(M, tuple(tuple(r) for r in hnf(list(gens) + M.relations(), M.rank)), tuple(gens))


def lattice_membership(N, v):
    v = tuple(int(x) for x in ((v,) if isinstance(v, int) else v))
    if len(v) != N.module.rank:
        raise SymbolicError("dimension mismatch")
    return in_lattice(N.basis, v)


def coprime_part(e, K):
    out = 1
    for p, k in factorint(e).items():
        if K % p:
            out *= p ** k
    return out


# exact classification -------------------------------------------------------

SUB_FLAGS = ("semiprime", "r", "sr_intro", "sr_alt", "semi_r", "prime", "satisfies_D")


def _exact_flags(N):
    M = N.module
    K = M.torsion_exponent
    e = N.quotient_exponent
    e_coprime = coprime_part(e, K)
    has_free = bool(M.free_coords)
    tors = N.quotient_torsion
    prime = N.is_proper and (not tors or (N.quotient_free_rank == 0 and len(set(tors)) == 1
                                          and sum(factorint(tors[0]).values()) == 1))
    return {
        "proper": N.is_proper,
        "semiprime": is_squarefree(e),
        "r": e_coprime == 1,
        "sr_intro": not N.free_projection,
        "sr_alt": not has_free,
        "semi_r": not (has_free and N.free_projection and not is_squarefree(e_coprime)),
        "prime": prime,
        "satisfies_D": not (N.meets_torsion and e_coprime > 1),
    }


PAIR_CAP = 400_000


def _pair_count(M, height):
    n = 2 * height + 1
    for k in M.invariants:
        n *= (2 * height + 1) if k == 0 else min(k, 2 * height + 1)
    return n


def _capped_height(M, height):
    while height > 1 and _pair_count(M, height) > PAIR_CAP:
        height -= 1
    return height


def _vectors(M, height):
    comps = []
    for k in M.invariants:
        comps.append([(v, abs(v)) for v in int_order(height)] if k == 0 else residue_order(k, height))
    items = []
    for combo in itertools.product(*[list(enumerate(c)) for c in comps]):
        h = max(hv for _, (_, hv) in combo)
        items.append((h, tuple(i for i, _ in combo), tuple(v for _, (v, _) in combo)))
    items.sort()
    return items


def _pair_arrays(N, height):
    """All (r, m) within height in combined-height order, with the predicates each flag needs."""
    M = N.module
    vecs = _vectors(M, height)
    rs = [(abs(r), i, r) for i, r in enumerate(int_order(height))]
    pairs = sorted(((max(hr, hm), ri, mi, r, m) for hr, ri, r in rs for (hm, mi, m) in vecs),
                   key=lambda t: t[:3])
    r_arr = np.array([p[3] for p in pairs], dtype=np.int64)
    m_arr = np.array([p[4] for p in pairs], dtype=np.int64).reshape(len(pairs), M.rank)
    D, Q = N.smith
    Qa = np.array(Q, dtype=object)
    rank = len(D)
    d = np.array(D, dtype=object)

    def inN(vs):
        w = vs.astype(object) @ Qa
        ok = (w[:, rank:] == 0).all(axis=1)
        if rank:
            ok &= (w[:, :rank] % d == 0).all(axis=1)
        return ok.astype(bool)

    c = N.colon_generator
    K = M.torsion_exponent
    fc = list(M.free_coords)
    arr = {
        "m_in": inN(m_arr),
        "rm_in": inN(r_arr[:, None] * m_arr),
        "r2m_in": inN((r_arr ** 2)[:, None] * m_arr),
        "inj": (r_arr != 0) & (np.gcd(r_arr, K) == 1),
        "faithful": (m_arr[:, fc] != 0).any(axis=1) if fc else np.zeros(len(pairs), dtype=bool),
        "colon": (r_arr == 0) if c == 0 else (r_arr % c == 0),
    }
    return pairs, arr


def bounded_submodule_search(N, flag, height=DEFAULT_HEIGHT):
    """First violating (r, m) in combined-height order; the height shrinks to keep the scan under PAIR_CAP."""
    if not N.is_proper:
        raise SymbolicError("submodule is not proper")
    height = _capped_height(N.module, height)
    pairs, a = _pair_arrays(N, height)
    bad = {
        "semiprime": a["r2m_in"] & ~a["rm_in"],
        "r": a["rm_in"] & a["inj"] & ~a["m_in"],
        "sr_intro": a["rm_in"] & a["faithful"] & ~a["colon"],
        "sr_alt": a["rm_in"] & a["faithful"] & ~a["m_in"],
        "semi_r": a["r2m_in"] & a["inj"] & a["faithful"] & ~a["rm_in"],
        "prime": a["rm_in"] & ~a["m_in"] & ~a["colon"],
    }.get(flag)
    if bad is None:
        raise SymbolicError(f"no bounded search for flag {flag!r}")
    hits = np.flatnonzero(bad)
    if len(hits):
        p = pairs[hits[0]]
        return Refuted((int(p[3]), tuple(int(x) for x in p[4])))
    return BoundedNoCounterexample(height)


# constructed witnesses, used when the smallest one lies past the search height

def _q_inverse(N):
    return [[int(x) for x in row] for row in Matrix(N.smith[1]).inv().tolist()]


def _reduce(N, v):
    """Shorten v inside its coset of N: torsion coords mod k, then HNF rows."""
    M = N.module
    v = list(M.reduce(v))
    for row, c in zip(N.basis, hnf_pivots(N.basis)):
        q = round(v[c] / row[c])
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(M.reduce(v))


def _element_of_order(N, p_power):
    """Lift of an element of Q with order p_power, or None."""
    D, _ = N.smith
    for i, d in enumerate(D):
        if d % p_power == 0:
            w = [0] * N.module.rank
            w[i] = d // p_power
            Qi = _q_inverse(N)
            m = [sum(w[k] * Qi[k][j] for k in range(len(w))) for j in range(len(w))]
            return _reduce(N, m)
    return None


def _free_row(N):
    fc = N.module.free_coords
    return next((tuple(r) for r in N.basis if any(r[i] for i in fc)), None)


def _make_faithful(N, m):
    if not N.module.is_torsion(m):
        return m
    row = _free_row(N)
    return tuple(a + b for a, b in zip(m, row)) if row else m


def _constructed(N, flag):
    M = N.module
    e = N.quotient_exponent
    e_cp = coprime_part(e, M.torsion_exponent)
    if flag == "semiprime":
        p = next(p for p, k in factorint(e).items() if k >= 2)
        return (p, _element_of_order(N, p * p))
    if flag == "r":
        p = min(factorint(e_cp))
        return (p, _element_of_order(N, p))
    if flag == "semi_r":
        p = next(p for p, k in factorint(e_cp).items() if k >= 2)
        return (p, _make_faithful(N, _element_of_order(N, p * p)))
    if flag == "sr_intro":
        return (1, _free_row(N))
    if flag == "sr_alt":
        for j in M.free_coords:
            ej = tuple(int(i == j) for i in range(M.rank))
            if ej not in N:
                return (0, ej)
        m0 = next(v for _, _, v in _vectors(M, 1) if v not in N)
        return (0, _make_faithful(N, m0) if not M.is_torsion(m0) else
                tuple(a + int(i == M.free_coords[0]) for i, a in enumerate(m0)))
    if flag == "prime":
        p = min(factorint(e))
        return (p, _element_of_order(N, p))
    raise SymbolicError(flag)


def _find_witness(N, flag, height):
    for h in (height, 2 * height, 4 * height):
        if _pair_count(N.module, h) > PAIR_CAP:
            break
        v = bounded_submodule_search(N, flag, h)
        if v.refuted:
            return v.witness
    w = _constructed(N, flag)
    if not submodule_witness_holds(N, flag, w):
        raise SymbolicError(f"constructed {flag} witness {w} fails on {N!r}")
    return w


def _d_witness(N, height):
    """(r, t, y): K = <t, y> with t a nonzero torsion element of N, y outside N, rK inside N."""
    M = N.module
    r, y = _find_witness(N, "r", height)
    for _, _, t in _vectors(M, _capped_height(M, height)):
        if any(t) and M.is_torsion(t) and any(M.reduce(t)) and lattice_membership(N, t):
            return (r, t, y)
    for row in hnf([list(x) for x in N.basis], M.rank):
        if M.is_torsion(row) and any(M.reduce(row)):
            return (r, tuple(row), y)
    return (r, None, y)


def sym_classify_submodule(N, height=DEFAULT_HEIGHT):
    """Exact flags with first witnesses in combined-height order; bounded search cross-checks every Proved flag."""
    flags = _exact_flags(N)
    if not flags["proper"]:
        return SymClassification({"proper": False})
    wit = {}
    for name in SUB_FLAGS:
        if name == "satisfies_D":
            if not flags[name]:
                wit[name] = _d_witness(N, height)
            continue
        bounded = bounded_submodule_search(N, name, height)
        if flags[name] and bounded.refuted:
            raise SymbolicError(f"bounded search contradicts exact {name} on {N!r}: {bounded.witness}")
        if not flags[name]:
            wit[name] = bounded.witness if bounded.refuted else _find_witness(N, name, height)
    return SymClassification(flags, wit)


def decide_submodule(N, flag, height=DEFAULT_HEIGHT):
    cls = sym_classify_submodule(N, height)
    if flag not in cls.flags:
        raise SymbolicError(f"unknown flag {flag!r}")
    return Proved() if cls.flags[flag] else Refuted(cls.witnesses.get(flag))


def submodule_witness_holds(N, flag, witness):
    M = N.module
    r, m = witness
    m = tuple(m)
    rm = tuple(r * x for x in m)
    r2m = tuple(r * r * x for x in m)
    faithful = not M.is_torsion(M.reduce(m))
    c = N.colon_generator
    colon = (r == 0) if c == 0 else (r % c == 0)
    if flag == "semiprime":
        return r2m in N and rm not in N
    if flag == "r":
        return rm in N and M.injective(r) and m not in N
    if flag == "sr_intro":
        return rm in N and faithful and not colon
    if flag == "sr_alt":
        return rm in N and faithful and m not in N
    if flag == "semi_r":
        return r2m in N and M.injective(r) and faithful and rm not in N
    if flag == "prime":
        return rm in N and m not in N and not colon
    raise SymbolicError(f"unknown flag {flag!r}")
