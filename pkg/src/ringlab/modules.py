"""Finite modules over table rings and the submodule classes built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .bits import first_true, from_bool, full_mask, mask_of, members, popcount, to_bool
from .ideals import (
    CapacityError,
    CheckFailure,
    IDEAL_CAP,
    additive_closure,
    all_ideals,
    ideal_of_mask,
    radical,
)
from .ring import RingError, Violation, _assoc_fail


class ModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ModuleTable:
    ring: object
    madd: np.ndarray
    action: np.ndarray  # [r, m] -> r*m
    names: tuple
    label: str = ""
    parts: tuple = ()
    memo: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        return f"ModuleTable({self.label or '?'} over {self.ring.label or '?'}, order={self.order})"

    @property
    def order(self):
        return len(self.names)

    @property
    def elements(self):
        return range(self.order)

    @cached_property
    def full(self):
        return full_mask(self.order)

    @cached_property
    def neg(self):
        return np.argmax(self.madd == 0, axis=1)

    @cached_property
    def lookup(self):
        return {name: i for i, name in enumerate(self.names)}

    def element(self, name):
        key = str(name).replace(" ", "")
        try:
            return self.lookup[key]
        except KeyError:
            raise ModuleError(f"{name!r} is not an element of {self.label or 'module'}") from None

    @cached_property
    def injective_scalars(self):
        """Scalars r with Ann_M(r) = 0."""
        return (self.action[:, 1:] != 0).all(axis=1)

    @cached_property
    def faithful_elements(self):
        """Elements m with Ann_R(m) = 0."""
        return (self.action[1:, :] != 0).all(axis=0)


def make_module(R, madd, action, names, label="", parts=(), verify=True):
    M = ModuleTable(R, np.asarray(madd, dtype=np.int32), np.asarray(action, dtype=np.int32),
                    tuple(names), label, tuple(parts))
    if verify:
        bad = verify_module_axioms(M)
        if bad:
            raise ModuleError(f"{label or 'module'}: {bad[0]}")
    return M


def build_module(R, kind="self", d=None, factors=None):
    """R as a module over itself, the cyclic module Z_d, or a product of modules."""
    if kind == "self":
        return make_module(R, R.add, R.mul, R.names, label="self")
    if kind == "cyclic":
        idx = R.additive_index
        if idx is None:
            raise ModuleError(f"cyclic modules need an additively cyclic ring, not {R.label}")
        n = R.order
        if d is None or d < 1 or n % d:
            raise ModuleError(f"Z{d} is not a module over {R.label}: {d} does not divide {n}")
        k = np.array([idx[r] for r in R.elements])
        m = np.arange(d)
        return make_module(R, (m[:, None] + m[None, :]) % d, (k[:, None] * m[None, :]) % d,
                           [str(i) for i in range(d)], label=f"Z{d}")
    if kind == "product":
        return product_module(factors)
    raise ModuleError(f"unknown module kind {kind!r}")


def product_module(factors):
    factors = list(factors)
    if len(factors) < 2:
        raise ModuleError("a product module needs at least two factors")
    R = factors[0].ring
    if any(F.ring is not R for F in factors):
        raise ModuleError("product factors must share the ring")
    coords = list(itertools.product(*[range(F.order) for F in factors]))
    index = {c: i for i, c in enumerate(coords)}
    n = len(coords)
    madd = np.zeros((n, n), dtype=np.int32)
    action = np.zeros((R.order, n), dtype=np.int32)
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            madd[i, j] = index[tuple(int(F.madd[x, y]) for F, x, y in zip(factors, a, b))]
        for r in R.elements:
            action[r, i] = index[tuple(int(F.action[r, x]) for F, x in zip(factors, a))]
    names = ["(" + ",".join(F.names[x] for F, x in zip(factors, c)) + ")" for c in coords]
    return make_module(R, madd, action, names, label=" x ".join(F.label for F in factors),
                       parts=tuple(factors))


def verify_module_axioms(M):
    R = M.ring
    n = M.order
    madd, act = M.madd, M.action
    out = []

    def report(axiom, arr):
        w = first_true(arr)
        if w is not None:
            out.append(Violation(axiom, w))

    if n < 1 or madd.shape != (n, n) or act.shape != (R.order, n):
        return [Violation("shape", (madd.shape, act.shape))]
    if ((madd < 0) | (madd >= n)).any() or ((act < 0) | (act >= n)).any():
        return [Violation("closure", ())]
    m = np.arange(n)
    report("additive identity", madd[0] != m)
    report("additive commutativity", madd != madd.T)
    report("additive inverse", ~(madd == 0).any(axis=1)[:, None])
    report("additive associativity", _assoc_fail(madd))
    report("unital action", (act[R.one] != m)[None, :])
    # r(m+m') = rm + rm'
    report("bilinearity", act[:, madd] != madd[act[:, :, None], act[:, None, :]])
    # (r+s)m = rm + sm
    report("bilinearity", act[R.add] != madd[act[:, None, :], act[None, :, :]])
    # (rs)m = r(sm)
    report("associativity of action", act[R.mul] != act[np.arange(R.order)[:, None, None], act[None, :, :]])
    return out


# submodules ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Submodule:
    module: ModuleTable
    mask: int
    gens: tuple = ()

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.module is self.module and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.module), self.mask))

    def __contains__(self, m):
        return bool(self.mask >> m & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"Submodule({self.describe()} of {self.module.label or '?'})"

    def describe(self):
        if self.gens:
            return "<" + ",".join(self.module.names[g] for g in self.gens) + ">"
        if self.mask == 1:
            return "<0>"
        return "{" + ",".join(self.module.names[m] for m in self.members) + "}"

    @property
    def members(self):
        return members(self.mask)

    @property
    def size(self):
        return popcount(self.mask)

    @property
    def is_proper(self):
        return self.mask != self.module.full

    @cached_property
    def inside(self):
        return to_bool(self.mask, self.module.order)

    @cached_property
    def flags(self):
        return classify_submodule(self)


def msum_masks(M, A, B):
    return from_bool(np.isin(np.arange(M.order), M.madd[np.ix_(members(A), members(B))]))


def cyclic_mask(M, m):
    key = ("cyclic", m)
    if key not in M.memo:
        M.memo[key] = from_bool(np.isin(np.arange(M.order), M.action[:, m]))
    return M.memo[key]


def generate_submodule(M, gens):
    gens = tuple(int(g) for g in gens)
    mask = 1
    for g in gens:
        mask = msum_masks(M, mask, cyclic_mask(M, g))
    return submodule_of_mask(M, mask, gens)


def submodule_of_mask(M, mask, gens=None):
    table = M.memo.get("sub_index")
    if table is not None and mask in table:
        return table[mask]
    return Submodule(M, mask, gens or ())


def all_submodules(M):
    if "subs" in M.memo:
        return M.memo["subs"]
    cyclic = {}
    for m in M.elements:
        cyclic.setdefault(cyclic_mask(M, m), m)
    found = {1: ()}
    queue = [1]
    while queue:
        mask = queue.pop()
        for cm, g in cyclic.items():
            if cm & ~mask == 0:
                continue
            j = msum_masks(M, mask, cm)
            if j not in found:
                found[j] = found[mask] + (g,)
                queue.append(j)
                if len(found) > IDEAL_CAP:
                    raise CapacityError(f"more than {IDEAL_CAP} submodules")
    out = [Submodule(M, m, found[m]) for m in sorted(found, key=lambda m: (popcount(m), m))]
    M.memo["subs"] = out
    M.memo["sub_index"] = {N.mask: N for N in out}
    return out


def is_submodule_mask(M, mask):
    if not mask & 1:
        return False
    inside = to_bool(mask, M.order)
    idx = np.flatnonzero(inside)
    return bool(inside[M.madd[np.ix_(idx, idx)]].all() and inside[M.action[:, idx]].all())


def torsion_set(M):
    """T(M) = {m : rm = 0 for some r != 0}, as a set (not necessarily a submodule)."""
    return frozenset(members(torsion_mask(M)))


def torsion_mask(M):
    return from_bool((M.action[1:, :] == 0).any(axis=0))


def module_zero_divisors(M):
    """Z(M) = {r : rm = 0 for some m != 0}."""
    return frozenset(members(from_bool((M.action[:, 1:] == 0).any(axis=1))))


def ann_scalar(M, r):
    return submodule_of_mask(M, from_bool(M.action[r] == 0))


def ann_element(M, m):
    return ideal_of_mask(M.ring, from_bool(M.action[:, m] == 0))


def ann_module(M):
    return ideal_of_mask(M.ring, from_bool((M.action == 0).all(axis=1)))


def colon_rm(N):
    """(N :_R M) = {r : rM subset of N}."""
    M = N.module
    return ideal_of_mask(M.ring, from_bool(N.inside[M.action].all(axis=1)))


def colon_mi(N, I):
    """(N :_M I) = {m : Im subset of N}."""
    M = N.module
    rows = M.action[I.members]
    return submodule_of_mask(M, from_bool(N.inside[rows].all(axis=0)))


def scalar_image(M, r, mask):
    """The submodule rK for K given by mask."""
    return from_bool(np.isin(np.arange(M.order), M.action[r, members(mask)]))


def ideal_times(I, N):
    """The submodule IN generated by products i*n."""
    M = N.module
    prods = M.action[np.ix_(I.members, N.members)]
    mask = mask_of(np.unique(prods)) | 1
    while True:
        nxt = msum_masks(M, mask, mask)
        if nxt == mask:
            break
        mask = nxt
    return submodule_of_mask(M, mask)


def sub_meet(N, K):
    return submodule_of_mask(N.module, N.mask & K.mask)


def sub_join(N, K):
    return submodule_of_mask(N.module, msum_masks(N.module, N.mask, K.mask))


@dataclass(frozen=True)
class ModuleFlags:
    is_faithful: bool
    is_multiplication: bool
    is_torsion: bool
    is_torsion_free: bool


def module_flags(M):
    if "flags" in M.memo:
        return M.memo["flags"]
    full = submodule_of_mask(M, M.full)
    faithful = ann_module(M).mask == 1
    multiplication = all(ideal_times(colon_rm(N), full).mask == N.mask for N in all_submodules(M))
    tmask = torsion_mask(M)
    out = ModuleFlags(faithful, multiplication, tmask == M.full, tmask == 1)
    M.memo["flags"] = out
    return out


def is_pure(N):
    """JN = JM meet N for every ideal J."""
    M = N.module
    full = submodule_of_mask(M, M.full)
    for J in all_ideals(M.ring):
        if ideal_times(J, N).mask != ideal_times(J, full).mask & N.mask:
            return False
    return True


def is_prime_submodule(N):
    if not N.is_proper:
        return False
    M = N.module
    colon = colon_rm(N).inside
    hit = N.inside[M.action] & ~colon[:, None] & ~N.inside[None, :]
    return not hit.any()


def m_rad(N):
    """Intersection of the prime submodules containing N (M itself if there are none)."""
    M = N.module
    mask = M.full
    for P in all_submodules(M):
        if P.mask & N.mask == N.mask and is_prime_submodule(P):
            mask &= P.mask
    return submodule_of_mask(M, mask)


def m_rad_formula(N):
    """sqrt((N:M)) M, which equals m_rad for finitely generated faithful multiplication M."""
    M = N.module
    return ideal_times(radical(colon_rm(N)), submodule_of_mask(M, M.full))


# classification -----------------------------------------------------------

@dataclass(frozen=True)
class SubmoduleFlags:
    is_proper: bool
    is_semiprime: bool = False
    is_r: bool = False
    is_sr_intro: bool = False
    is_sr_alt: bool = False
    is_semi_r: bool = False
    is_prime: bool = False
    satisfies_D: bool = False
    witnesses: dict = field(default_factory=dict, compare=False)

    def get(self, name):
        return getattr(self, name if name.startswith("is_") or name == "satisfies_D" else "is_" + name)


SUBMODULE_FLAGS = ("proper", "semiprime", "r", "sr_intro", "sr_alt", "semi_r", "prime", "satisfies_D")

SUB_IMPLICATIONS = (
    ("is_r", "is_semi_r"),
    ("is_semiprime", "is_semi_r"),
    ("is_sr_intro", "is_semi_r"),
)


def _power_action(M, k):
    """[r, m] -> r^k m."""
    R = M.ring
    out = np.broadcast_to(np.arange(M.order), (R.order, M.order)).copy()
    rows = np.arange(R.order)[:, None]
    for _ in range(k):
        out = M.action[rows, out]
    return out


def semi_r_submodule_by_power(N, k):
    M = N.module
    rk = _power_action(M, k)
    bad = (N.inside[rk] & M.injective_scalars[:, None] & M.faithful_elements[None, :]
           & ~N.inside[M.action])
    return first_true(bad)


def classify_submodule(N):
    M = N.module
    if not N.is_proper:
        return SubmoduleFlags(is_proper=False)
    inN = N.inside
    rm_in = inN[M.action]                    # [r, m]: rm in N
    r2m_in = inN[_power_action(M, 2)]
    inj = M.injective_scalars[:, None]
    faith = M.faithful_elements[None, :]
    colon = colon_rm(N).inside[:, None]
    out_m = ~inN[None, :]
    witnesses = {}

    def holds(name, bad):
        w = first_true(bad)
        if w is not None:
            witnesses[name] = w
        return w is None

    semiprime = holds("semiprime", r2m_in & ~rm_in)
    r = holds("r", rm_in & inj & out_m)
    sr_intro = holds("sr_intro", rm_in & faith & ~colon)
    sr_alt = holds("sr_alt", rm_in & faith & out_m)
    semi_r = holds("semi_r", r2m_in & inj & faith & ~rm_in)
    prime = holds("prime", rm_in & out_m & ~colon)
    D = d_annihilator(N)
    if not D:
        witnesses["satisfies_D"] = M.memo.get(("D-witness", N.mask))
    flags = SubmoduleFlags(True, semiprime, r, sr_intro, sr_alt, semi_r, prime, D, witnesses)
    bad = [(a, b) for a, b in SUB_IMPLICATIONS if flags.get(a) and not flags.get(b)]
    if bad:
        raise CheckFailure(f"submodule implications broken for {N!r}: {bad}", bad)
    if (semi_r_submodule_by_power(N, 3) is None) != semi_r:
        raise CheckFailure(f"cube test disagrees with semi r scan on {N!r}")
    return flags


def d_annihilator(N):
    """rK in N with Ann_M(r)=0 forces K in N or K meet T(M) = 0."""
    M = N.module
    if not N.is_proper:
        return False
    tmask = torsion_mask(M)
    scalars = np.flatnonzero(M.injective_scalars)
    for K in all_submodules(M):
        if K.mask & ~N.mask == 0 or K.mask & tmask == 1:
            continue
        for r in scalars:
            if scalar_image(M, int(r), K.mask) & ~N.mask == 0:
                M.memo[("D-witness", N.mask)] = (int(r), K.describe())
                return False
    return True


def eqM_condition(N):
    """For all r with Ann_M(r)=0 and submodules K: r^2 K in N implies rK in N."""
    M = N.module
    r2 = _power_action(M, 2)
    for K in all_submodules(M):
        idx = K.members
        for r in np.flatnonzero(M.injective_scalars):
            if N.inside[r2[r, idx]].all() and not N.inside[M.action[r, idx]].all():
                return False
    return True


# quotients and homomorphisms ---------------------------------------------

def quotient_module(M, K):
    """M/K with cosets named by their least representative; returns (module, projection)."""
    reps, proj = [], [-1] * M.order
    for m in M.elements:
        if proj[m] >= 0:
            continue
        cls = len(reps)
        reps.append(m)
        for k in K.members:
            proj[int(M.madd[m, k])] = cls
    n = len(reps)
    madd = np.array([[proj[M.madd[a, b]] for b in reps] for a in reps], dtype=np.int32)
    action = np.array([[proj[M.action[r, a]] for a in reps] for r in M.ring.elements], dtype=np.int32)
    Q = make_module(M.ring, madd, action, [M.names[a] for a in reps],
                    label=f"{M.label}/{K.describe()}")
    return Q, tuple(proj)


def image_submodule(images, N, target):
    return submodule_of_mask(target, mask_of({images[m] for m in N.members}))


def preimage_submodule(images, N2, source):
    return submodule_of_mask(source, mask_of(m for m in source.elements if images[m] in N2))


def module_generators(M):
    """A small generating set: greedily add the element that enlarges the span most."""
    gens, mask = [], 1
    while mask != M.full:
        best = max((m for m in M.elements if not mask >> m & 1),
                   key=lambda m: (popcount(msum_masks(M, mask, cyclic_mask(M, m))), -m))
        gens.append(best)
        mask = msum_masks(M, mask, cyclic_mask(M, best))
    return gens


def enumerate_module_homs(M1, M2, f=None, cap=16):
    """R1-linear maps M1 -> M2, where M2 is an R1-module through the ring hom f."""
    if M1.order > cap or M2.order > cap:
        raise CapacityError(f"module hom search capped at order {cap}")
    R1 = M1.ring
    f = tuple(range(R1.order)) if f is None else tuple(f)
    gens = module_generators(M1)
    out = []
    for imgs in itertools.product(range(M2.order), repeat=len(gens)):
        phi = _extend_module_map(M1, M2, f, dict(zip(gens, imgs)))
        if phi is not None:
            out.append(phi)
    return out


def _extend_module_map(M1, M2, f, seed):
    phi = [-1] * M1.order
    phi[0] = 0
    frontier = []
    for g, v in seed.items():
        if phi[g] not in (-1, v):
            return None
        phi[g] = v
        frontier.append(g)
    # close under the action first, then under sums
    for g in list(frontier):
        for r in M1.ring.elements:
            m, v = int(M1.action[r, g]), int(M2.action[f[r], phi[g]])
            if phi[m] == -1:
                phi[m] = v
            elif phi[m] != v:
                return None
    changed = True
    while changed:
        changed = False
        known = [m for m in M1.elements if phi[m] >= 0]
        for a in known:
            for b in known:
                s, v = int(M1.madd[a, b]), int(M2.madd[phi[a], phi[b]])
                if phi[s] == -1:
                    phi[s] = v
                    changed = True
                elif phi[s] != v:
                    return None
    if -1 in phi:
        return None
    p = np.array(phi)
    if (p[M1.madd] != M2.madd[p[:, None], p[None, :]]).any():
        return None
    fr = np.array(f)
    if (p[M1.action] != M2.action[fr[:, None], p[None, :]]).any():
        return None
    return tuple(phi)
