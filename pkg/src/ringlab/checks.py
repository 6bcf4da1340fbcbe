"""Theorem checks over the corpus.

Each check is a generator of Case objects. A case carries whether the
statement's hypotheses hold on that instance, a thunk for the conclusion, and
a thunk rendering the instance as a reproducible witness. The runner in
harness.py does the counting; nothing here decides a verdict.

Conventions used throughout: "semi r", "r" and friends include properness, as
the definitions require; zd(R) contains 0; on a finite ring the regular
elements are exactly the units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import from_bool, mask_of, members
from .constructions import (
    ConstructionError,
    amalg_module,
    amalg_zd_envelope,
    amalgamation,
    dup_module,
    enumerate_homs,
    enumerate_subrings,
    ideal_idealization,
    idealization_parts,
    localization,
    localize_ideal,
    localize_module,
    localize_submodule,
    multiplicative_closure,
    quotient_ring,
    transfer_ideal_I,
    transfer_ideal_K,
    transfer_N1,
    transfer_N2,
    z_of_ideal,
)
from .ideals import (
    CapacityError,
    CheckFailure,
    all_ideals,
    char_crosscheck,
    colon_ideal,
    ideal_arith,
    ideal_of_mask,
    ideal_power,
    image_ideal,
    radical,
    z_upper,
)
from .modules import (
    all_submodules,
    colon_mi,
    colon_rm,
    d_annihilator,
    enumerate_module_homs,
    eqM_condition,
    ideal_times,
    image_submodule,
    is_pure,
    m_rad,
    m_rad_formula,
    module_flags,
    module_zero_divisors,
    preimage_submodule,
    semi_r_submodule_by_power,
    submodule_of_mask,
    torsion_mask,
)
from .ring import build_product, build_zn, product_coords


@dataclass
class Case:
    hyp: bool
    concl: object = None   # thunk -> bool, only forced when hyp holds
    where: object = ""     # str or thunk -> str


SKIP = object()


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    anchor: str
    scope: str
    run: object
    expect: str = "hold"   # "refute" for negative controls


CHECKS = {}


def check(cid, anchor, scope, expect="hold"):
    def deco(fn):
        CHECKS[cid] = TheoremCheck(cid, anchor, scope, fn, expect)
        return fn
    return deco


# small predicates -------------------------------------------------------------

def sr(I):
    return I.flags.is_semi_r


def is_r(I):
    return I.flags.is_r


def zd_trivial(I):
    """I meets zd(R) only in 0."""
    return I.mask & I.ring.zd_mask == 1


def sub_r(N):
    if not N.is_proper:
        return False
    M = N.module
    bad = N.inside[M.action] & M.injective_scalars[:, None] & ~N.inside[None, :]
    return not bad.any()


def sub_sr(N):
    return N.is_proper and semi_r_submodule_by_power(N, 2) is None


def sub_D(N):
    key = ("D", N.mask)
    memo = N.module.memo
    if key not in memo:
        memo[key] = d_annihilator(N)
    return memo[key]


def full_sub(M):
    return submodule_of_mask(M, M.full)


def proper_ideals(R):
    return [I for I in all_ideals(R) if I.is_proper]


def ann_of_ideal(I):
    R = I.ring
    return from_bool((R.mul[:, I.members] == 0).all(axis=1))


def ideal_is_faithful_mult(I):
    """Ann(I) = 0 and every ideal L inside I equals I(L:I)."""
    if ann_of_ideal(I) != 1:
        return False
    for L in all_ideals(I.ring):
        if L <= I and ideal_arith("product", I, colon_ideal(L, I.members)) != L:
            return False
    return True


def set_str(R, mask):
    return "{" + ",".join(R.names[a] for a in members(mask)) + "}"


# corpus-derived families -------------------------------------------------------

def product_ideal(R, comps):
    """I_1 x ... x I_n as an ideal of a product ring."""
    C = _coords(R)
    ok = np.ones(R.order, dtype=bool)
    for pos, I in enumerate(comps):
        ok &= I.inside[C[:, pos]]
    return ideal_of_mask(R, from_bool(ok))


def _coords(R):
    if "coords" not in R.memo:
        R.memo["coords"] = np.array(product_coords(R), dtype=np.int64)
    return R.memo["coords"]


def factor_ideal_combos(R):
    return itertools.product(*[all_ideals(F) for F in R.factors])


def comps_str(comps):
    return " x ".join(I.describe() for I in comps)


def multiplication_modules(corpus, faithful=True):
    out = []
    for label, M in corpus.modules:
        fl = module_flags(M)
        if fl.is_multiplication and (fl.is_faithful or not faithful):
            out.append((label, M))
    return out


def small_hom_rings(corpus, limit=8):
    return [(e, R) for e, R in corpus.rings if R.order <= limit]


def ring_amalgamations(corpus, limit=8):
    """(description, AmalgRing) for every hom f: R -> S between small corpus rings and every J of S."""
    key = ("amalgs", limit)
    cache = corpus.__dict__.setdefault("_derived", {})
    if key in cache:
        return cache[key]
    out = []
    rings = small_hom_rings(corpus, limit)
    for e1, R1 in rings:
        for e2, R2 in rings:
            if R1.characteristic % R2.characteristic:
                continue
            for f in enumerate_homs(R1, R2):
                for J in all_ideals(R2):
                    if R1.order * J.size > 64:
                        continue
                    A = amalgamation(R1, R2, f, J)
                    out.append((f"amal({e1}, {e2}, {f.name}, {J.describe()})", A))
    cache[key] = out
    return out


def _small_modules(R):
    """Self-module and the proper cyclic modules of R."""
    from .modules import build_module

    if "small_modules" in R.memo:
        return R.memo["small_modules"]
    out = [("self", build_module(R, "self"))]
    if R.additive_index is not None:
        for d in range(2, R.order):
            if R.order % d == 0:
                out.append((f"Z{d}", build_module(R, "cyclic", d=d)))
    R.memo["small_modules"] = out
    return out


AMALG_RINGS = ("Z2", "Z3", "Z4", "Z6", "Z2 x Z2")


def module_amalgamations(corpus):
    """(description, AmalgModule) over hom f: R1 -> R2 with R1, R2 among a few small corpus rings."""
    cache = corpus.__dict__.setdefault("_derived", {})
    if "mod_amalgs" in cache:
        return cache["mod_amalgs"]
    rings = [(e, R) for e, R in corpus.rings if e in AMALG_RINGS]
    out = []
    for e1, R1 in rings:
        for e2, R2 in rings:
            if R1.characteristic % R2.characteristic:
                continue
            for f in enumerate_homs(R1, R2):
                for J in all_ideals(R2):
                    A = amalgamation(R1, R2, f, J)
                    for l1, M1 in _small_modules(R1):
                        for l2, M2 in _small_modules(R2):
                            for k, phi in enumerate(enumerate_module_homs(M1, M2, f.images)):
                                AM = amalg_module(A, M1, M2, phi)
                                if AM.module.order > 64:
                                    continue
                                out.append((f"amal({e1}, {e2}, {f.name}, {J.describe()}) with "
                                            f"{l1} -> {l2} by phi#{k}", AM))
    cache["mod_amalgs"] = out
    return out


def duplication_modules(corpus):
    cache = corpus.__dict__.setdefault("_derived", {})
    if "dup_mods" in cache:
        return cache["dup_mods"]
    out = []
    for e, T in corpus.by_kind("amalgamation"):
        A = T.memo["amalgamation"]
        if not A.f.is_identity:
            continue
        for l, M in _small_modules(A.R1):
            out.append((f"{e} with M = {l}", dup_module(A, M)))
    cache["dup_mods"] = out
    return out


def is_iso_phi(AM):
    return len(set(AM.phi)) == AM.M1.order == AM.M2.order


# ideal-theoretic checks --------------------------------------------------------

@check("T_char", "For a proper ideal I: I semi r <=> (a^2 in I, a^2 != 0, Ann(a)=0 => a in I) "
       "<=> (a^k in I, Ann(a)=0 => a in I) <=> rad(I) in zd(R) u I",
       "every proper ideal of every corpus ring; k in {2, 3, |R|}")
def t_char(corpus):
    for e, R in corpus.rings:
        for I in proper_ideals(R):
            def concl(I=I):
                try:
                    char_crosscheck(I)
                    return True
                except CheckFailure:
                    return False
            yield Case(True, concl, lambda e=e, I=I: f"{e}: I={I.describe()}")


@check("C_coro", "I semi r, J^k in I, J n zd(R) = 0 => J in I; for proper I, J meeting zd(R) "
       "only in 0: I, J semi r with I^2 = J^2 => I = J, and I^2 semi r => I^2 = I",
       "ideal pairs of every corpus ring; k <= 3")
def c_coro(corpus):
    for e, R in corpus.rings:
        ideals = all_ideals(R)
        for I in ideals:
            for J in ideals:
                for k in (1, 2, 3):
                    hyp = sr(I) and zd_trivial(J) and ideal_power(J, k) <= I
                    yield Case(hyp, lambda I=I, J=J: J <= I,
                               lambda e=e, I=I, J=J, k=k: f"{e}: I={I.describe()}, J={J.describe()}, k={k}")
                if I.is_proper and J.is_proper and zd_trivial(I) and zd_trivial(J):
                    hyp = sr(I) and sr(J) and ideal_power(I, 2) == ideal_power(J, 2)
                    yield Case(hyp, lambda I=I, J=J: I == J,
                               lambda e=e, I=I, J=J: f"{e}: I={I.describe()}, J={J.describe()} (squares)")
            if I.is_proper and zd_trivial(I):
                I2 = ideal_power(I, 2)
                yield Case(sr(I2), lambda I=I, I2=I2: I2 == I, lambda e=e, I=I: f"{e}: I={I.describe()} (I^2)")


@check("L_max", "S nonempty, S n zd(R) empty, I semi r, S not in I => (I:S) semi r",
       "every semi r ideal; S a single regular element or all of reg(R)")
def l_max(corpus):
    for e, R in corpus.rings:
        regs = members(R.reg_mask)
        choices = [[s] for s in regs] + [regs]
        for I in proper_ideals(R):
            for S in choices:
                hyp = sr(I) and any(s not in I for s in S)
                yield Case(hyp, lambda I=I, S=S: sr(colon_ideal(I, S)),
                           lambda e=e, I=I, S=S: f"{e}: I={I.describe()}, S={set_str(R, mask_of(S))}")


@check("T_maxzd", "I maximal among semi r ideals contained in zd(R) => I is an r-ideal",
       "every corpus ring")
def t_maxzd(corpus):
    for e, R in corpus.rings:
        cands = [I for I in proper_ideals(R) if sr(I) and I.mask & ~R.zd_mask == 0]
        for I in cands:
            maximal = not any(I.mask != K.mask and I <= K for K in cands)
            yield Case(maximal, lambda I=I: is_r(I), lambda e=e, I=I: f"{e}: I={I.describe()}")


@check("T_every", "Equivalent: R is uz; every proper ideal is r; every proper ideal is semi r; "
       "every proper principal ideal is semi r; every semi r ideal is r",
       "every corpus ring; hits count proper ideals")
def t_every(corpus):
    for e, R in corpus.rings:
        props = proper_ideals(R)
        uz = (R.units_mask | R.zd_mask) == R.full and R.units_mask & R.zd_mask == 0
        every_r = all(is_r(I) for I in props)
        every_sr = all(sr(I) for I in props)
        principal = all(sr(I) for I in props if len(I.gens) <= 1)
        sr_is_r = all(is_r(I) for I in props if sr(I))
        vals = (uz, every_r, every_sr, principal, sr_is_r)
        for I in props:
            yield Case(True, lambda vals=vals: len(set(vals)) == 1,
                       lambda e=e, vals=vals: f"{e}: statements evaluate to {vals}")


@check("P_f", "f: R1 -> R2 epi, I1 semi r, Ker f in I1 (also the literal I1 in Ker f), I1 n zd(R1) = 0 "
       "=> f(I1) semi r; f iso, I2 semi r => f^-1(I2) semi r",
       "all homs between corpus rings of order <= 16 with |R2| dividing |R1|")
def p_f(corpus):
    rings = [(e, R) for e, R in corpus.rings if R.order <= 16]
    for e1, R1 in rings:
        for e2, R2 in rings:
            if R1.order % R2.order or R1.characteristic % R2.characteristic:
                continue
            for f in enumerate_homs(R1, R2):
                epi, iso = f.is_surjective, f.is_surjective and f.is_injective
                ker = f.kernel
                where = f"{e1} -> {e2} by {f.name}"
                for I1 in proper_ideals(R1):
                    for literal in (False, True):
                        contain = (I1 <= ker) if literal else (ker <= I1)
                        hyp = epi and contain and sr(I1) and zd_trivial(I1)
                        yield Case(hyp, lambda f=f, I1=I1, R2=R2: sr(image_ideal(f.images, I1, R2)),
                                   lambda where=where, I1=I1: f"{where}: I1={I1.describe()}")
                if iso:
                    for I2 in proper_ideals(R2):
                        pre = ideal_of_mask(R1, mask_of(a for a in R1.elements if f(a) in I2))
                        yield Case(sr(I2), lambda pre=pre: sr(pre),
                                   lambda where=where, I2=I2: f"{where}: I2={I2.describe()}")


def _quotients(R):
    if "quotients" not in R.memo:
        R.memo["quotients"] = {J.mask: quotient_ring(R, J) for J in proper_ideals(R)}
    return R.memo["quotients"]


@check("C_quotient", "J in I: (1) I semi r, I n zd(R) = 0 => I/J semi r in R/J; "
       "(2) I/J semi r, J an r-ideal => I semi r",
       "corpus rings of order <= 32, all proper J in I")
def c_quotient(corpus):
    for e, R in corpus.rings:
        if R.order > 32:
            continue
        quots = _quotients(R)
        for J in proper_ideals(R):
            Q, proj = quots[J.mask]
            for I in proper_ideals(R):
                if not J <= I:
                    continue
                IJ = ideal_of_mask(Q, proj.image_mask(I.mask))
                where = lambda e=e, I=I, J=J: f"{e}: I={I.describe()}, J={J.describe()}"
                yield Case(sr(I) and zd_trivial(I), lambda IJ=IJ: sr(IJ), where)
                yield Case(sr(IJ) and is_r(J), lambda I=I: sr(I), where)


@check("P_inters", "An intersection of semi r ideals is semi r",
       "families of 1 to 3 semi r ideals in every corpus ring")
def p_inters(corpus):
    for e, R in corpus.rings:
        srs = [I for I in proper_ideals(R) if sr(I)]
        for size in (1, 2, 3):
            for fam in itertools.combinations(srs, size):
                mask = R.full
                for I in fam:
                    mask &= I.mask
                K = ideal_of_mask(R, mask)
                yield Case(True, lambda K=K: sr(K),
                           lambda e=e, fam=fam: f"{e}: " + " n ".join(I.describe() for I in fam))


@check("P_S", "S mult. closed, S n zd(R) empty: (1) I semi r, I n S empty => S^-1 I semi r; "
       "(2) S^-1 I semi r, S n Z_I(R) empty => I semi r, where Z_I(R) = {r : rs in I, s not in I}",
       "corpus rings of order <= 16, S generated by one regular element")
def p_s(corpus):
    for e, R in corpus.rings:
        if R.order > 16:
            continue
        for s in members(R.reg_mask):
            S = members(multiplicative_closure(R, [s]))
            loc = localization(R, [s])
            for I in proper_ideals(R):
                LI = localize_ideal(loc, I)
                where = lambda e=e, I=I, s=s: f"{e}: I={I.describe()}, S=<{R.names[s]}>"
                yield Case(sr(I) and not any(x in I for x in S), lambda LI=LI: sr(LI), where)
                zi = z_upper(I)
                yield Case(sr(LI) and not any(x in zi for x in S), lambda I=I: sr(I), where)


@check("P_essential", "R essential in S (R meets every nonzero ideal of S), J semi r in S => J n R semi r in R",
       "unital subrings of corpus rings of order <= 16")
def p_essential(corpus):
    for e, S in corpus.rings:
        if S.order > 16:
            continue
        for sub in enumerate_subrings(S):
            if sub.mask == S.full:
                continue
            T, emb = sub.ring, sub.embedding
            for J in proper_ideals(S):
                meet = ideal_of_mask(T, mask_of(i for i, a in enumerate(emb) if a in J))
                yield Case(sub.essential and sr(J), lambda meet=meet: sr(meet),
                           lambda e=e, sub=sub, J=J: f"{e}: R={set_str(S, sub.mask)}, J={J.describe()}")


@check("P_Ca2", "R = R1 x ... x Rn, I_j proper: R1 x .. x I_j x .. x Rn semi r <=> I_j semi r",
       "every product ring in the corpus, every factor position")
def p_ca2(corpus):
    for e, R in corpus.by_kind("product"):
        fulls = [all_ideals(F)[-1] for F in R.factors]
        for j, F in enumerate(R.factors):
            for Ij in proper_ideals(F):
                comps = list(fulls)
                comps[j] = Ij
                I = product_ideal(R, comps)
                yield Case(True, lambda I=I, Ij=Ij: sr(I) == sr(Ij),
                           lambda e=e, comps=comps: f"{e}: I={comps_str(comps)}")


@check("T_ca1", "R = R1 x R2, I1, I2 proper: (1) I1, I2 semi r => I1 x I2 semi r; (2) I1 x I2 semi r => "
       "I1 or I2 semi r; (3) I1 x I2 semi r, I2 not in zd(R2) => I1 semi r; (4) symmetric",
       "two-factor product rings in the corpus")
def t_ca1(corpus):
    for e, R in corpus.by_kind("product"):
        if len(R.factors) != 2:
            continue
        R1, R2 = R.factors
        for I1 in proper_ideals(R1):
            for I2 in proper_ideals(R2):
                I = product_ideal(R, [I1, I2])
                where = lambda e=e, I1=I1, I2=I2: f"{e}: I={I1.describe()} x {I2.describe()}"
                yield Case(sr(I1) and sr(I2), lambda I=I: sr(I), where)
                yield Case(sr(I), lambda I1=I1, I2=I2: sr(I1) or sr(I2), where)
                yield Case(sr(I) and I2.mask & ~R2.zd_mask != 0, lambda I1=I1: sr(I1), where)
                yield Case(sr(I) and I1.mask & ~R1.zd_mask != 0, lambda I2=I2: sr(I2), where)


@check("C_cc", "R = R1 x ... x Rn, all I_i proper: (1) all I_i semi r => product semi r; (2) product semi r "
       "=> some I_j semi r; (3) product semi r, I_j not in zd(R_j) for all j != i => I_i semi r",
       "every product ring in the corpus")
def c_cc(corpus):
    for e, R in corpus.by_kind("product"):
        for comps in itertools.product(*[proper_ideals(F) for F in R.factors]):
            I = product_ideal(R, comps)
            where = lambda e=e, comps=comps: f"{e}: I={comps_str(comps)}"
            yield Case(all(sr(c) for c in comps), lambda I=I: sr(I), where)
            yield Case(sr(I), lambda comps=comps: any(sr(c) for c in comps), where)
            for i in range(len(comps)):
                others = all(c.mask & ~c.ring.zd_mask != 0 for j, c in enumerate(comps) if j != i)
                yield Case(sr(I) and others, lambda c=comps[i]: sr(c), where)


@check("L_red", "R = R1 x ... x Rn with R_j reduced, I_i arbitrary for i != j => "
       "I_1 x .. x 0 x .. x I_n (0 at j) is semi r",
       "every product ring in the corpus, every reduced factor")
def l_red(corpus):
    for e, R in corpus.by_kind("product"):
        for j, F in enumerate(R.factors):
            if F.nil_mask != 1:
                continue
            for comps in factor_ideal_combos(R):
                if comps[j].mask != 1:
                    continue
                I = product_ideal(R, comps)
                yield Case(True, lambda I=I: sr(I), lambda e=e, comps=comps: f"{e}: I={comps_str(comps)}")


def _cchar_theorem(comps_semi_r, comps_zero, comps_full):
    """Some I_j = 0, or (up to reordering) every non-full I_i is semi r."""
    if any(comps_zero):
        return True
    proper = [s for s, full in zip(comps_semi_r, comps_full) if not full]
    return bool(proper) and all(proper)


@check("T_cchar", "R = R1 x ... x Rn (n >= 2) domains: I_1 x ... x I_n semi r <=> some I_j = 0, or, after "
       "reordering, I_1..I_j semi r and I_{j+1}..I_n = R (all I_i semi r being the case j = n)",
       "ZZ x ZZ with generators 0..12, ZZ x ZZ x ZZ with generators 0..6, finite products of fields")
def t_cchar(corpus):
    for e, R in corpus.by_kind("product"):
        if not all(_is_field(F) for F in R.factors):
            continue
        for comps in factor_ideal_combos(R):
            I = product_ideal(R, comps)
            if not I.is_proper:
                continue
            pred = _cchar_theorem([sr(c) for c in comps], [c.mask == 1 for c in comps],
                                  [not c.is_proper for c in comps])
            yield Case(True, lambda I=I, pred=pred: sr(I) == pred,
                       lambda e=e, comps=comps: f"{e}: I={comps_str(comps)}")
    if not corpus.spec.symbolic:
        return
    from .symbolic.rings import SymRing, bounded_ideal_search, cchar_closed_form, sym_classify, sym_ideal_from_comps

    for n, top in ((2, 12), (3, 6)):
        R = SymRing((0,) * n, label=" x ".join(["ZZ"] * n))
        for comps in itertools.product(range(top + 1), repeat=n):
            if all(c == 1 for c in comps):
                continue
            I = sym_ideal_from_comps(R, comps)

            def concl(I=I, comps=comps):
                exact = sym_classify(I).flags["semi_r"]
                closed = cchar_closed_form(I)
                pred = _cchar_theorem([c != 1 and _z_semi_r(c) for c in comps], [c == 0 for c in comps],
                                      [c == 1 for c in comps])
                bounded = not bounded_ideal_search(I, "semi_r", max(top, 4)).refuted
                return exact == closed == pred == bounded
            yield Case(True, concl, lambda R=R, I=I: f"{R.label}: I={I.describe()}")


def _z_semi_r(c):
    from .symbolic.rings import is_squarefree

    return c == 0 or is_squarefree(c)


def _is_field(F):
    return F.units_mask == F.full & ~1


@check("L_am", "In R amal^f J: zd(R amal^f J) in A u B, A = {(r, f(r)+j) : r in zd(R)}, "
       "B = {(r, f(r)+j) : j'(f(r)+j) = 0 for some nonzero j' in J}",
       "all homs between corpus rings of order <= 8, every ideal J of the target")
def l_am(corpus):
    for where, A in ring_amalgamations(corpus):
        a_mask, b_mask = amalg_zd_envelope(A)
        T = A.ring
        yield Case(True, lambda T=T, m=a_mask | b_mask: T.zd_mask & ~m == 0, where)


@check("T_a1", "I semi r in R => I amal^f J semi r; the converse holds when f(reg(R)) n Z(J) is empty, "
       "Z(J) = {s : sj = 0 for some nonzero j in J}",
       "all homs between corpus rings of order <= 8, every J, every proper I")
def t_a1(corpus):
    for where, A in ring_amalgamations(corpus):
        R1 = A.R1
        zj = z_of_ideal(A.J)
        cond = not any(zj >> A.f(a) & 1 for a in members(R1.reg_mask))
        for I in proper_ideals(R1):
            IJ = transfer_ideal_I(A, I)
            w = lambda where=where, I=I: f"{where}: I={I.describe()}"
            yield Case(sr(I), lambda IJ=IJ: sr(IJ), w)
            yield Case(cond and sr(IJ), lambda I=I: sr(I), w)


@check("T_a2", "K ideal of f(R)+J: K semi r => bar K semi r; (1) with zd(f(R)+J) = Z(J) as well; "
       "(2) bar K semi r, f(zd(R)) in zd(f(R)+J), f(zd(R))J = 0 => K semi r",
       "all homs between corpus rings of order <= 8, every J, every proper K; Z(J) is compared inside f(R)+J")
def t_a2(corpus):
    for where, A in ring_amalgamations(corpus):
        R1, R2, sub, emb = A.R1, A.R2, A.sub, A.sub_embedding
        zj = z_of_ideal(A.J)
        zj_sub = mask_of(i for i, y in enumerate(emb) if zj >> y & 1)
        cond1 = sub.zd_mask == zj_sub
        fzd = [A.f(a) for a in members(R1.zd_mask)]
        in_sub_zd = all(sub.zd_mask >> emb.index(y) & 1 for y in fzd)
        kills_J = all(R2.mul[y, j] == 0 for y in fzd for j in A.J.members)
        cond2 = in_sub_zd and kills_J
        for K in proper_ideals(sub):
            Kbar = transfer_ideal_K(A, K)
            w = lambda where=where, K=K: f"{where}: K={K.describe()}"
            yield Case(sr(K), lambda Kbar=Kbar: sr(Kbar), w)
            yield Case(sr(K) and cond1, lambda Kbar=Kbar: sr(Kbar), w)
            yield Case(sr(Kbar) and cond2, lambda K=K: sr(K), w)


# submodule checks --------------------------------------------------------------

@check("P_kpow_mod", "N semi r <=> (r^k m in N, Ann_M(r) = 0, Ann_R(m) = 0 => rm in N)",
       "every submodule of every corpus module; k in {2, 3, |R|}")
def p_kpow_mod(corpus):
    for label, M in corpus.modules:
        for N in all_submodules(M):
            if not N.is_proper:
                continue
            ks = sorted({2, 3, M.ring.order})
            yield Case(True, lambda N=N, ks=ks: all((semi_r_submodule_by_power(N, k) is None) == N.flags.is_semi_r
                                                    for k in ks),
                       lambda label=label, N=N: f"{label}: N={N.describe()}")


@check("P_torsionfree", "M torsion-free: N semi r <=> N semiprime",
       "torsion-free corpus modules; symbolic: ZZ and ZZ x ZZ with generator entries in -4..4")
def p_torsionfree(corpus):
    for label, M in corpus.modules:
        if torsion_mask(M) != 1:
            continue
        for N in all_submodules(M):
            if N.is_proper:
                yield Case(True, lambda N=N: N.flags.is_semi_r == N.flags.is_semiprime,
                           lambda label=label, N=N: f"{label}: N={N.describe()}")
    if not corpus.spec.symbolic:
        return
    from .symbolic.zmodules import FGZModule, sym_classify_submodule, sym_submodule

    seen = set()
    for M in (FGZModule((0,), "ZZ"), FGZModule((0, 0), "ZZ x ZZ")):
        vecs = list(itertools.product(range(-4, 5), repeat=M.rank))
        gensets = [[v] for v in vecs] if M.rank == 1 else [[v, w] for v in vecs for w in vecs if v < w][::37]
        for gens in gensets:
            N = sym_submodule(M, gens)
            if (M.label, N.basis) in seen or not N.is_proper:
                continue
            seen.add((M.label, N.basis))

            def concl(N=N):
                f = sym_classify_submodule(N, 3).flags
                return f["semi_r"] == f["semiprime"]
            yield Case(True, concl, lambda M=M, N=N: f"{M.label}: N={N.describe()}")


@check("P_eqM", "N proper with the D-annihilator condition: N semi r <=> "
       "(r^2 K in N, Ann_M(r) = 0 => rK in N for all submodules K)",
       "every proper submodule with D of every corpus module")
def p_eqm(corpus):
    for label, M in corpus.modules:
        for N in all_submodules(M):
            if N.is_proper:
                yield Case(sub_D(N), lambda N=N: sub_sr(N) == eqM_condition(N),
                           lambda label=label, N=N: f"{label}: N={N.describe()}")


@check("L_smith", "M f.g. faithful multiplication: (IN:M) = I(N:M) and (IM:M) = I",
       "every ideal I and submodule N of the f.g. faithful multiplication corpus modules")
def l_smith(corpus):
    for label, M in multiplication_modules(corpus):
        full = full_sub(M)
        for I in all_ideals(M.ring):
            w = lambda label=label, I=I: f"{label}: I={I.describe()}"
            yield Case(True, lambda I=I: colon_rm(ideal_times(I, full)) == I, w)
            for N in all_submodules(M):
                yield Case(True, lambda I=I, N=N: colon_rm(ideal_times(I, N)) == ideal_arith("product", I, colon_rm(N)),
                           lambda label=label, I=I, N=N: f"{label}: I={I.describe()}, N={N.describe()}")


@check("L_majed", "M faithful multiplication, I f.g. faithful multiplication ideal: N = (IN :_M I); "
       "if N in IM then (JN :_M I) = J(N :_M I) for every ideal J",
       "faithful multiplication corpus modules; I ranges over faithful multiplication ideals")
def l_majed(corpus):
    for label, M in multiplication_modules(corpus):
        R = M.ring
        good = [I for I in all_ideals(R) if ideal_is_faithful_mult(I)]
        full = full_sub(M)
        for I in all_ideals(R):
            ok = I in good
            for N in all_submodules(M):
                w = lambda label=label, I=I, N=N: f"{label}: I={I.describe()}, N={N.describe()}"
                yield Case(ok, lambda I=I, N=N: colon_mi(ideal_times(I, N), I) == N, w)
                inside = N <= ideal_times(I, full)
                for J in all_ideals(R):
                    yield Case(ok and inside,
                               lambda I=I, N=N, J=J: colon_mi(ideal_times(J, N), I) == ideal_times(J, colon_mi(N, I)),
                               w)


@check("T_IM", "M f.g. faithful multiplication, N = IM proper with D: N semi r <=> I semi r",
       "every ideal of the f.g. faithful multiplication corpus modules")
def t_im(corpus):
    for label, M in multiplication_modules(corpus):
        full = full_sub(M)
        for I in all_ideals(M.ring):
            N = ideal_times(I, full)
            hyp = N.is_proper and sub_D(N)
            yield Case(hyp, lambda N=N, I=I: sub_sr(N) == sr(I),
                       lambda label=label, I=I: f"{label}: I={I.describe()}")


@check("C_NM", "M f.g. faithful multiplication, N proper with D: N semi r <=> (N:M) semi r <=> "
       "N = IM for some semi r ideal I",
       "every proper submodule of the f.g. faithful multiplication corpus modules")
def c_nm(corpus):
    for label, M in multiplication_modules(corpus):
        full = full_sub(M)
        prods = [(I, ideal_times(I, full)) for I in all_ideals(M.ring)]
        for N in all_submodules(M):
            if not N.is_proper:
                continue

            def concl(N=N):
                a = sub_sr(N)
                b = sr(colon_rm(N))
                c = any(sr(I) and P == N for I, P in prods)
                return a == b == c
            yield Case(sub_D(N), concl, lambda label=label, N=N: f"{label}: N={N.describe()}")


@check("P_mrad", "M f.g. multiplication, N semi r with D: (1) (N :_M I) != M => (N :_M I) semi r; "
       "(2) M faithful => (M-rad(N):M) in zd(R) u rad((N:M)); also M-rad(N) = rad((N:M))M on f.g. "
       "faithful multiplication M",
       "multiplication corpus modules, every ideal I")
def p_mrad(corpus):
    for label, M in multiplication_modules(corpus, faithful=False):
        R = M.ring
        faithful = module_flags(M).is_faithful
        for N in all_submodules(M):
            if not N.is_proper:
                continue
            base = sub_sr(N) and sub_D(N)
            w = lambda label=label, N=N: f"{label}: N={N.describe()}"
            for I in all_ideals(R):
                K = colon_mi(N, I)
                yield Case(base and K.is_proper, lambda K=K: sub_sr(K),
                           lambda label=label, N=N, I=I: f"{label}: N={N.describe()}, I={I.describe()}")
            yield Case(base and faithful,
                       lambda N=N: colon_rm(m_rad(N)).mask & ~(R.zd_mask | radical(colon_rm(N)).mask) == 0, w)
            yield Case(faithful, lambda N=N: m_rad(N) == m_rad_formula(N), w)


@check("T_IN", "M f.g. faithful multiplication, IN with D: (1) I semi r, N pure semi r => IN semi r; "
       "(2) I f.g. faithful multiplication, IN semi r => I semi r or N semi r",
       "every ideal I and submodule N of the f.g. faithful multiplication corpus modules")
def t_in(corpus):
    for label, M in multiplication_modules(corpus):
        R = M.ring
        fm = {I.mask: ideal_is_faithful_mult(I) for I in all_ideals(R)}
        for I in all_ideals(R):
            for N in all_submodules(M):
                IN = ideal_times(I, N)
                if not (IN.is_proper and sub_D(IN)):
                    yield Case(False)
                    continue
                w = lambda label=label, I=I, N=N: f"{label}: I={I.describe()}, N={N.describe()}"
                yield Case(sr(I) and sub_sr(N) and is_pure(N), lambda IN=IN: sub_sr(IN), w)
                yield Case(fm[I.mask] and sub_sr(IN), lambda I=I, N=N: sr(I) or sub_sr(N), w)


def _modules_by_ring(corpus, limit=16):
    groups = {}
    for label, M in corpus.modules:
        if M.order <= limit:
            groups.setdefault(id(M.ring), []).append((label, M))
    return list(groups.values())


@check("P_fsub", "f: M -> M' linear: (1) f epi, N semi r, Ker f in N, N n T(M) = 0 => f(N) semi r; "
       "(2) f iso, N' semi r => f^-1(N') semi r",
       "linear maps between corpus modules of order <= 16 over the same ring")
def p_fsub(corpus):
    for group in _modules_by_ring(corpus):
        for l1, M1 in group:
            tmask = torsion_mask(M1)
            for l2, M2 in group:
                if M1.order % M2.order:
                    continue
                for k, phi in enumerate(enumerate_module_homs(M1, M2)):
                    epi = len(set(phi)) == M2.order
                    iso = epi and M1.order == M2.order
                    ker = mask_of(m for m in M1.elements if phi[m] == 0)
                    where = f"{l1} -> {l2} by map#{k}"
                    for N in all_submodules(M1):
                        hyp = epi and sub_sr(N) and ker & ~N.mask == 0 and N.mask & tmask == 1
                        yield Case(hyp, lambda phi=phi, N=N, M2=M2: sub_sr(image_submodule(phi, N, M2)),
                                   lambda where=where, N=N: f"{where}: N={N.describe()}")
                    if iso:
                        for N2 in all_submodules(M2):
                            yield Case(sub_sr(N2), lambda phi=phi, N2=N2, M1=M1: sub_sr(preimage_submodule(phi, N2, M1)),
                                       lambda where=where, N2=N2: f"{where}: N'={N2.describe()}")


@check("T_SM", "S mult. closed, S n Z(M) empty: (1) N semi r, (N:M) n S empty => S^-1 N semi r in S^-1 M; "
       "(2) S^-1 N semi r in S^-1 M, S n Z_N empty => N semi r, where Z_N = {r : rm in N, m not in N}",
       "corpus modules of order <= 16, S generated by one element outside Z(M)")
def t_sm(corpus):
    for label, M in corpus.modules:
        if M.order > 16:
            continue
        R = M.ring
        zm = module_zero_divisors(M)
        for s in R.elements:
            if s in zm:
                continue
            S = members(multiplicative_closure(R, [s]))
            try:
                loc = localization(R, [s])
            except ConstructionError:
                yield SKIP
                continue
            LM, cls = localize_module(loc, M)
            for N in all_submodules(M):
                LN = localize_submodule(LM, cls, N)
                col = colon_rm(N)
                zn = {r for r in R.elements if (N.inside[M.action[r]] & ~N.inside).any()}
                w = lambda label=label, N=N, s=s: f"{label}: N={N.describe()}, S=<{R.names[s]}>"
                yield Case(sub_sr(N) and not any(x in col for x in S), lambda LN=LN: sub_sr(LN), w)
                yield Case(sub_sr(LN) and not any(x in zn for x in S), lambda N=N: sub_sr(N), w)


@check("P_ide", "I proper: (1) I semi r => I(+)M semi r, converse when Z(M) in zd(R); (2) I semi r, N an "
       "r-submodule with IM in N => I(+)N semi r; when Z(M) in zd(R), I(+)N semi r => I semi r",
       "every idealization ring in the corpus")
def p_ide(corpus):
    for e, A in corpus.by_kind("idealization"):
        R, M = idealization_parts(A)
        conv = module_zero_divisors(M) <= set(members(R.zd_mask))
        full = full_sub(M)
        for I in proper_ideals(R):
            IM = ideal_times(I, full)
            IpM = ideal_idealization(A, I, full)
            w = lambda e=e, I=I: f"{e}: I={I.describe()}, N=M"
            yield Case(sr(I), lambda IpM=IpM: sr(IpM), w)
            yield Case(conv and sr(IpM), lambda I=I: sr(I), w)
            for N in all_submodules(M):
                if not IM <= N:
                    continue
                IpN = ideal_idealization(A, I, N)
                w = lambda e=e, I=I, N=N: f"{e}: I={I.describe()}, N={N.describe()}"
                yield Case(sr(I) and sub_r(N), lambda IpN=IpN: sr(IpN), w)
                yield Case(conv and sr(IpN), lambda I=I: sr(I), w)


@check("T_amalg", "JM2 = 0, N1 in M1: (1) N1 r <=> N1 amal JM2 r; (2) N1 semi r => N1 amal JM2 semi r; "
       "(3) M2 faithful, N1 amal JM2 semi r => N1 semi r",
       "homs among Z2, Z3, Z4, Z6, Z2 x Z2; self and cyclic modules; every linear phi")
def t_amalg(corpus):
    for where, AM in module_amalgamations(corpus):
        zero = AM.JM2.mask == 1
        faithful = module_flags(AM.M2).is_faithful
        for N1 in all_submodules(AM.M1):
            T = transfer_N1(AM, N1)
            w = lambda where=where, N1=N1: f"{where}: N1={N1.describe()}"
            yield Case(zero, lambda N1=N1, T=T: sub_r(N1) == sub_r(T), w)
            yield Case(zero and sub_sr(N1), lambda T=T: sub_sr(T), w)
            yield Case(zero and faithful and sub_sr(T), lambda N1=N1: sub_sr(N1), w)


@check("C_dup1", "N in M, J ideal: (1) N dup J r => N r, converse when JM = 0; (2) the same for semi r",
       "duplication rings of the corpus with self and cyclic modules")
def c_dup1(corpus):
    for where, AM in duplication_modules(corpus):
        zero = AM.JM2.mask == 1
        for N in all_submodules(AM.M1):
            T = transfer_N1(AM, N)
            w = lambda where=where, N=N: f"{where}: N={N.describe()}"
            for pred in (sub_r, sub_sr):
                yield Case(pred(T), lambda N=N, pred=pred: pred(N), w)
                yield Case(zero and pred(N), lambda T=T, pred=pred: pred(T), w)


@check("T_amalg2", "N2 in M2: (1) N2 r, JM2 != 0, T(M2) in JM2 => bar N2 r; converse when moreover f is epi "
       "and phi iso; (2) f, phi iso, bar N2 semi r => N2 semi r",
       "homs among Z2, Z3, Z4, Z6, Z2 x Z2; self and cyclic modules; every linear phi; "
       "T(M2) taken as an element set; (1) read with bar N2 proper")
def t_amalg2(corpus):
    for where, AM in module_amalgamations(corpus):
        M2 = AM.M2
        side = AM.JM2.mask != 1 and torsion_mask(M2) & ~AM.JM2.mask == 0
        f_epi = AM.amalg.f.is_surjective
        f_iso = f_epi and AM.amalg.f.is_injective
        phi_iso = is_iso_phi(AM)
        for N2 in all_submodules(M2):
            T = transfer_N2(AM, N2)
            w = lambda where=where, N2=N2: f"{where}: N2={N2.describe()}"
            # bar N2 is all of the module once phi(M1) + JM2 lies in N2; an r-submodule is proper
            yield Case(side and sub_r(N2) and T.is_proper, lambda T=T: sub_r(T), w)
            yield Case(side and f_epi and phi_iso and sub_r(T), lambda N2=N2: sub_r(N2), w)
            yield Case(f_iso and phi_iso and sub_sr(T), lambda N2=N2: sub_sr(N2), w)


@check("C_dup2", "N in M, J ideal: (1) bar N r => N r, converse when JM = 0; (2) the same for semi r",
       "duplication rings of the corpus with self and cyclic modules")
def c_dup2(corpus):
    for where, AM in duplication_modules(corpus):
        zero = AM.JM2.mask == 1
        for N in all_submodules(AM.M1):
            T = transfer_N2(AM, N)
            w = lambda where=where, N=N: f"{where}: N={N.describe()}"
            for pred in (sub_r, sub_sr):
                yield Case(pred(T), lambda N=N, pred=pred: pred(N), w)
                yield Case(zero and pred(N), lambda T=T, pred=pred: pred(T), w)


# negative controls ---------------------------------------------------------------
# Statements with a hypothesis dropped; each must be refuted, and the known
# counterexample is tried first so the reported witness is the documented one.

@check("NC_quotient1", "Without I n zd(R) = 0: J in I, I semi r => I/J semi r in R/J",
       "ZZ(+)Z_k for k in 2..6 with J = 0(+)Z_k and I = nZ(+)Z_k, n in 0..12; 4Z(+)Z4 first",
       expect="refute")
def nc_quotient1(corpus):
    if not corpus.spec.symbolic:
        return
    from .symbolic.rings import SymRing, decide_ideal, sym_ideal_from_comps

    Z = SymRing((0,), label="ZZ")
    order = [(4, 4)] + [(k, n) for k in range(2, 7) for n in range(13) if (k, n) != (4, 4)]
    for k, n in order:
        if n == 1:
            continue
        A = SymRing((0,), idz=k, label=f"idz(ZZ, Z{k})")
        I = sym_ideal_from_comps(A, (n, 1))
        # R/J is ZZ and I/J is nZ
        IJ = sym_ideal_from_comps(Z, (n,))
        yield Case(decide_ideal(I, "semi_r").proved,
                   lambda IJ=IJ: decide_ideal(IJ, "semi_r").proved,
                   lambda A=A, I=I, IJ=IJ: f"{A.label}: I={I.describe()}, J=0Z(+)Z{A.idz}; I/J = {IJ.describe()} "
                                           f"fails at {decide_ideal(IJ, 'semi_r').witness}")


@check("NC_quotient2", "Without J an r-ideal: J in I, I/J semi r in R/J => I semi r",
       "R = ZZ, I = nZ, J = mZ with n | m <= 16; 8Z over 16Z first", expect="refute")
def nc_quotient2(corpus):
    if not corpus.spec.symbolic:
        return
    from .ideals import generate_ideal
    from .symbolic.rings import SymRing, decide_ideal, sym_ideal_from_comps

    Z = SymRing((0,), label="ZZ")
    pairs = [(8, 16)] + [(n, m) for m in range(2, 17) for n in range(2, m + 1) if m % n == 0 and (n, m) != (8, 16)]
    for n, m in pairs:
        Zm = build_zn(m)
        IJ = generate_ideal(Zm, [n % m])
        I = sym_ideal_from_comps(Z, (n,))
        yield Case(sr(IJ), lambda I=I: decide_ideal(I, "semi_r").proved,
                   lambda n=n, m=m, I=I: f"ZZ: I={n}Z, J={m}Z; I/J = <{n % m}> in Z{m} is semi r, "
                                         f"I fails at {decide_ideal(I, 'semi_r').witness}")


@check("NC_ca1_converse", "Converse of the product rule: I1 x I2 semi r => I1 and I2 semi r",
       "ZZ x ZZ with generators 0..8; 4Z x 0 first", expect="refute")
def nc_ca1_converse(corpus):
    if not corpus.spec.symbolic:
        return
    from .symbolic.rings import SymRing, decide_ideal, sym_ideal_from_comps

    R = SymRing((0, 0), label="ZZ x ZZ")
    Z = SymRing((0,), label="ZZ")
    combos = [(4, 0)] + [c for c in itertools.product(range(9), repeat=2) if c != (4, 0) and 1 not in c]
    for a, b in combos:
        I = sym_ideal_from_comps(R, (a, b))
        I1, I2 = sym_ideal_from_comps(Z, (a,)), sym_ideal_from_comps(Z, (b,))
        yield Case(decide_ideal(I, "semi_r").proved,
                   lambda I1=I1, I2=I2: decide_ideal(I1, "semi_r").proved and decide_ideal(I2, "semi_r").proved,
                   lambda I=I, I1=I1, I2=I2: f"ZZ x ZZ: I={I.describe()} is semi r; "
                                             f"{_nc_factor_failure(I1, I2)}")


def _nc_factor_failure(I1, I2):
    from .symbolic.rings import decide_ideal

    for name, J in (("I1", I1), ("I2", I2)):
        v = decide_ideal(J, "semi_r")
        if v.refuted:
            return f"{name} = {J.describe()} fails at {v.witness}"
    return "both factors semi r"


@check("NC_amalg2_literal", "Without bar N2 proper: N2 r, JM2 != 0, T(M2) in JM2 => bar N2 r",
       "the module amalgamations of T_amalg2", expect="refute")
def nc_amalg2_literal(corpus):
    for where, AM in module_amalgamations(corpus):
        M2 = AM.M2
        side = AM.JM2.mask != 1 and torsion_mask(M2) & ~AM.JM2.mask == 0
        for N2 in all_submodules(M2):
            T = transfer_N2(AM, N2)
            yield Case(side and sub_r(N2), lambda T=T: sub_r(T),
                       lambda where=where, N2=N2, T=T: f"{where}: N2={N2.describe()}, bar N2 has "
                                                      f"{T.size} of {T.module.order} elements")
