"""Derived rings and modules: quotients, localizations, idealizations,
amalgamations and duplications, with ideal and submodule transfers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .bits import from_bool, mask_of, members, popcount, to_bool
from .ideals import (
    CapacityError,
    Ideal,
    additive_closure,
    all_ideals,
    generate_ideal,
    ideal_of_mask,
    is_ideal_mask,
)
from .modules import (
    ModuleError,
    Submodule,
    ideal_times,
    is_submodule_mask,
    make_module,
    submodule_of_mask,
)
from .ring import RingError, make_ring


class ConstructionError(ValueError):
    pass


# homomorphisms --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RingHom:
    source: object
    target: object
    images: tuple
    name: str = ""

    def __call__(self, a):
        return self.images[a]

    def __repr__(self):
        return f"RingHom({self.name or '?'}: {self.source.label} -> {self.target.label})"

    @property
    def is_identity(self):
        return self.source is self.target and self.images == tuple(self.source.elements)

    def image_mask(self, mask=None):
        src = self.source.elements if mask is None else members(mask)
        return mask_of(self.images[a] for a in src)

    @property
    def kernel(self):
        return ideal_of_mask(self.source, mask_of(a for a in self.source.elements if self.images[a] == 0))

    @property
    def is_surjective(self):
        return popcount(self.image_mask()) == self.target.order

    @property
    def is_injective(self):
        return len(set(self.images)) == self.source.order


def hom_violation(R, S, images):
    """First failure of f being a unital ring hom, or None."""
    f = np.asarray(images)
    if len(f) != R.order or ((f < 0) | (f >= S.order)).any():
        return ("shape", ())
    if f[R.one] != S.one:
        return ("unit", (R.one,))
    bad = f[R.add] != S.add[f[:, None], f[None, :]]
    if bad.any():
        return ("additive", tuple(int(v) for v in np.argwhere(bad)[0]))
    bad = f[R.mul] != S.mul[f[:, None], f[None, :]]
    if bad.any():
        return ("multiplicative", tuple(int(v) for v in np.argwhere(bad)[0]))
    return None


def make_hom(R, S, images, name=""):
    bad = hom_violation(R, S, images)
    if bad:
        raise ConstructionError(f"not a ring homomorphism {R.label} -> {S.label}: {bad[0]} fails at {bad[1]}")
    return RingHom(R, S, tuple(int(v) for v in images), name)


def identity_hom(R):
    return RingHom(R, R, tuple(R.elements), "id")


def additive_generators(R):
    """A small additive generating set starting with 1, chosen greedily."""
    gens = [R.one]
    span = additive_closure(R, principal_add(R, R.one))
    while span != R.full:
        best = max((a for a in R.elements if not span >> a & 1),
                   key=lambda a: (popcount(_add_join(R, span, a)), -a))
        gens.append(best)
        span = _add_join(R, span, best)
    return gens


def principal_add(R, a):
    mask, x = 1, a
    while not mask >> x & 1:
        mask |= 1 << x
        x = int(R.add[x, a])
    return mask


def _add_join(R, span, a):
    return additive_closure(R, span | principal_add(R, a))


def _additive_order(R, a):
    return popcount(principal_add(R, a))


def enumerate_homs(R, S, cap=32):
    """All unital ring homs R -> S in lexicographic order of their image tables."""
    if R.order > cap or S.order > cap:
        raise CapacityError(f"hom search is capped at order {cap}")
    gens = additive_generators(R)
    out = []

    def extend(phi, known):
        # close the partial map under addition; None on inconsistency
        changed = True
        while changed:
            changed = False
            for a in list(known):
                for b in list(known):
                    s, v = int(R.add[a, b]), int(S.add[phi[a], phi[b]])
                    if phi[s] == -1:
                        phi[s] = v
                        known.append(s)
                        changed = True
                    elif phi[s] != v:
                        return False
        for a in known:
            for b in known:
                p = int(R.mul[a, b])
                if phi[p] != -1 and phi[p] != int(S.mul[phi[a], phi[b]]):
                    return False
        return True

    def search(k, phi, known):
        if k == len(gens):
            if -1 not in phi and hom_violation(R, S, phi) is None:
                out.append(RingHom(R, S, tuple(phi)))
            return
        g = gens[k]
        if k == 0:
            choices = [S.one]
        else:
            o = _additive_order(R, g)
            choices = [y for y in S.elements if o % _additive_order(S, y) == 0]
        for y in choices:
            trial, tk = list(phi), list(known)
            if trial[g] not in (-1, y):
                continue
            if trial[g] == -1:
                trial[g] = y
                tk.append(g)
            if extend(trial, tk):
                search(k + 1, trial, tk)

    phi = [-1] * R.order
    phi[0] = 0
    search(0, phi, [0])
    seen, uniq = set(), []
    for h in out:
        if h.images not in seen:
            seen.add(h.images)
            uniq.append(h)
    uniq.sort(key=lambda h: h.images)
    for i, h in enumerate(uniq):
        object.__setattr__(h, "name", "id" if h.is_identity else f"hom#{i}")
    return uniq


# subrings -------------------------------------------------------------------

def subring_mask_closure(R, mask):
    mask |= 1 | (1 << R.one)
    while True:
        idx = members(mask)
        nxt = mask | from_bool(np.isin(np.arange(R.order), R.mul[np.ix_(idx, idx)]))
        nxt = additive_closure(R, nxt)
        if nxt == mask:
            return mask
        mask = nxt


def make_subring(R, mask, label=None):
    """Restrict R to a subring given by mask; returns (table, embedding)."""
    emb = members(mask)
    pos = {a: i for i, a in enumerate(emb)}
    try:
        add = [[pos[int(R.add[a, b])] for b in emb] for a in emb]
        mul = [[pos[int(R.mul[a, b])] for b in emb] for a in emb]
        one = pos[R.one]
    except KeyError:
        raise ConstructionError("subset is not a subring") from None
    if label is None:
        label = "{" + ",".join(R.names[a] for a in emb) + "}"
    T = make_ring(add, mul, one, [R.names[a] for a in emb], label=label)
    return T, tuple(emb)


@dataclass(frozen=True)
class Subring:
    ring: object
    embedding: tuple
    mask: int
    essential: bool


def enumerate_subrings(S, cap=16):
    """Unital subrings of S, each with an essential flag (meets every nonzero ideal)."""
    if S.order > cap:
        raise CapacityError(f"subring search is capped at order {cap}")
    base = subring_mask_closure(S, 0)
    found = {base}
    queue = [base]
    while queue:
        m = queue.pop()
        for a in S.elements:
            if not m >> a & 1:
                n = subring_mask_closure(S, m | (1 << a))
                if n not in found:
                    found.add(n)
                    queue.append(n)
    nonzero = [I for I in all_ideals(S) if I.mask != 1]
    out = []
    for m in sorted(found, key=lambda m: (popcount(m), m)):
        T, emb = make_subring(S, m)
        essential = all(I.mask & m != 1 for I in nonzero)
        out.append(Subring(T, emb, m, essential))
    return out


# quotients ------------------------------------------------------------------

def quotient_ring(R, I, label=None):
    """R/I with cosets named by their least representative; returns (ring, projection hom)."""
    if not I.is_proper:
        raise ConstructionError("cannot take the quotient by the unit ideal")
    reps, proj = [], [-1] * R.order
    for a in R.elements:
        if proj[a] >= 0:
            continue
        cls = len(reps)
        reps.append(a)
        for i in I.members:
            proj[int(R.add[a, i])] = cls
    P = np.array(proj)
    r = np.array(reps)
    add = P[R.add[np.ix_(r, r)]]
    mul = P[R.mul[np.ix_(r, r)]]
    aliases = {R.names[a]: proj[a] for a in R.elements}
    Q = make_ring(add, mul, proj[R.one], [R.names[a] for a in reps],
                  label=label or f"{R.label}/{I.describe()}", aliases=aliases)
    return Q, RingHom(R, Q, tuple(proj), "projection")


# localization ---------------------------------------------------------------

def multiplicative_closure(R, S):
    mask = 1 << R.one
    for s in S:
        mask |= 1 << s
    while True:
        idx = members(mask)
        nxt = mask | from_bool(np.isin(np.arange(R.order), R.mul[np.ix_(idx, idx)]))
        if nxt == mask:
            return mask
        mask = nxt


def _s_torsion(action, S, n):
    """{x : u x = 0 for some u in S}, for an action table indexed [u, x]."""
    return from_bool((action[S] == 0).any(axis=0)) if len(S) else 1


@dataclass(frozen=True, eq=False)
class Localization:
    ring: object
    canonical: RingHom
    S: tuple
    pair_class: dict = field(repr=False)   # (r, s) -> element of ring


def localization(R, S, label=None):
    """S^{-1}R on pair classes (r,s) ~ (r',s') iff u(rs' - r's) = 0 for some u in S."""
    S = list(S)
    if not S:
        raise ConstructionError("localization needs a nonempty multiplicative set")
    smask = multiplicative_closure(R, S)
    Slist = members(smask)
    if smask & 1:
        raise ConstructionError("S contains 0; the localization is the zero ring")
    K = to_bool(_s_torsion(R.mul, Slist, R.order), R.order)
    # every pair (r, s) is equivalent to some (r', 1); pick the least r' per pair
    rep = {}
    for s in Slist:
        # r - r's in K  <=>  (r, s) ~ (r', 1)
        diff = R.add[np.arange(R.order)[:, None], R.neg[R.mul[:, s]][None, :]]  # [r, r']
        ok = K[diff]
        if not ok.any(axis=1).all():
            raise ConstructionError(f"pair class without a fraction-free representative at s={R.names[s]}")
        for r in R.elements:
            rep[(r, s)] = int(np.argmax(ok[r]))
    # classes of (r', 1): r' ~ r'' iff r' - r'' in K
    reps, cls = [], [-1] * R.order
    for a in R.elements:
        if cls[a] >= 0:
            continue
        cls[a] = len(reps)
        for b in R.elements:
            if cls[b] < 0 and K[R.sub(a, b)]:
                cls[b] = cls[a]
        reps.append(a)
    C = np.array(cls)
    r = np.array(reps)
    L = make_ring(C[R.add[np.ix_(r, r)]], C[R.mul[np.ix_(r, r)]], cls[R.one],
                  [R.names[a] for a in reps], label=label or f"S^-1 {R.label}",
                  aliases={R.names[a]: cls[a] for a in R.elements})
    can = RingHom(R, L, tuple(cls), "canonical")
    for s in Slist:
        if not L.units_mask >> can(s) & 1:
            raise ConstructionError(f"{R.names[s]} is not inverted by the localization")
    pair_class = {pair: cls[v] for pair, v in rep.items()}
    return Localization(L, can, tuple(Slist), pair_class)


def localize_module(loc, M):
    """S^{-1}M over loc.ring; pairs (m,s) ~ (m',s') iff u(s'm - sm') = 0 for some u in S."""
    R, L = M.ring, loc.ring
    K = to_bool(_s_torsion(M.action, list(loc.S), M.order), M.order)
    reps, cls = [], [-1] * M.order
    for a in M.elements:
        if cls[a] >= 0:
            continue
        cls[a] = len(reps)
        for b in M.elements:
            if cls[b] < 0 and K[int(M.madd[a, M.neg[b]])]:
                cls[b] = cls[a]
        reps.append(a)
    C = np.array(cls)
    r = np.array(reps)
    # lift each class of L to a ring representative
    lift = [loc.canonical.images.index(c) for c in L.elements]
    action = C[M.action[np.ix_(lift, r)]]
    LM = make_module(L, C[M.madd[np.ix_(r, r)]], action, [M.names[a] for a in reps],
                     label=f"S^-1 {M.label}")
    return LM, tuple(cls)


def localize_ideal(loc, I):
    return ideal_of_mask(loc.ring, loc.canonical.image_mask(I.mask))


def localize_submodule(LM, cls, N):
    return submodule_of_mask(LM, mask_of(cls[n] for n in N.members))


# idealization ---------------------------------------------------------------

def idealization(R, M, label=None):
    """R(+)M: pairs (r,m) with (r1,m1)(r2,m2) = (r1 r2, r1 m2 + r2 m1)."""
    if M.ring is not R:
        raise ConstructionError("module is over a different ring")
    nr, nm = R.order, M.order
    rr, mm = np.divmod(np.arange(nr * nm), nm)
    add = R.add[rr[:, None], rr[None, :]] * nm + M.madd[mm[:, None], mm[None, :]]
    cross = M.madd[M.action[rr[:, None], mm[None, :]], M.action[rr[None, :], mm[:, None]]]
    mul = R.mul[rr[:, None], rr[None, :]] * nm + cross
    names = [f"({R.names[a]},{M.names[b]})" for a, b in zip(rr, mm)]
    A = make_ring(add, mul, R.one * nm, names, label=label or f"{R.label}(+){M.label}")
    A.memo["idealization"] = (R, M)
    return A


def idealization_parts(A):
    try:
        return A.memo["idealization"]
    except KeyError:
        raise ConstructionError(f"{A.label} is not an idealization") from None


def ideal_idealization(A, I, N):
    """I(+)N as an ideal of A = R(+)M; requires IM inside N."""
    R, M = idealization_parts(A)
    if I.ring is not R or N.module is not M:
        raise ConstructionError("ideal/submodule do not belong to the idealized pair")
    IM = ideal_times(I, submodule_of_mask(M, M.full))
    if IM.mask & ~N.mask:
        raise ConstructionError(f"{I.describe()}(+){N.describe()} is not an ideal: IM is not inside N")
    nm = M.order
    mask = mask_of(i * nm + n for i in I.members for n in N.members)
    return ideal_of_mask(A, mask)


# amalgamation ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AmalgRing:
    ring: object
    R1: object
    R2: object
    f: RingHom
    J: Ideal
    pairs: tuple              # element index -> (r, y) with y = f(r) + j
    sub: object               # f(R1) + J as a ring table
    sub_embedding: tuple      # sub index -> R2 index

    def __repr__(self):
        return f"AmalgRing({self.ring.label}, order={self.ring.order})"

    @property
    def index(self):
        return {p: i for i, p in enumerate(self.pairs)}

    def sub_index(self, y):
        return self.sub_embedding.index(y)


def amalgamation(R1, R2, f, J, label=None):
    if f.source is not R1 or f.target is not R2:
        raise ConstructionError("hom does not match the rings")
    if hom_violation(R1, R2, f.images):
        raise ConstructionError("invalid homomorphism")
    if J.ring is not R2:
        raise ConstructionError("J must be an ideal of the target ring")
    pairs = sorted({(r, int(R2.add[f(r), j])) for r in R1.elements for j in J.members})
    pos = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    P = np.array(pairs)
    a_idx = R1.add[P[:, 0][:, None], P[:, 0][None, :]]
    a_y = R2.add[P[:, 1][:, None], P[:, 1][None, :]]
    m_idx = R1.mul[P[:, 0][:, None], P[:, 0][None, :]]
    m_y = R2.mul[P[:, 1][:, None], P[:, 1][None, :]]
    try:
        add = [[pos[(int(a_idx[i, k]), int(a_y[i, k]))] for k in range(n)] for i in range(n)]
        mul = [[pos[(int(m_idx[i, k]), int(m_y[i, k]))] for k in range(n)] for i in range(n)]
    except KeyError:
        raise ConstructionError("amalgamation is not closed; J is not an ideal?") from None
    names = [f"({R1.names[r]},{R2.names[y]})" for r, y in pairs]
    if label is None:
        label = f"{R1.label} amal {R2.label} along {J.describe()}"
    T = make_ring(add, mul, pos[(R1.one, R2.one)], names, label=label)
    sub, emb = make_subring(R2, mask_of(y for _, y in pairs), label=f"f({R1.label})+{J.describe()}")
    A = AmalgRing(T, R1, R2, f, J, tuple(pairs), sub, emb)
    T.memo["amalgamation"] = A
    return A


def duplication(R, J, label=None):
    return amalgamation(R, R, identity_hom(R), J, label=label or f"{R.label} dup {J.describe()}")


def transfer_ideal_I(A, I):
    """I amal J = {(i, f(i)+j)}."""
    if I.ring is not A.R1:
        raise ConstructionError("I must be an ideal of R1")
    mask = mask_of(k for k, (r, _) in enumerate(A.pairs) if r in I)
    return ideal_of_mask(A.ring, mask)


def transfer_ideal_K(A, K):
    """bar K^f = {(a, f(a)+j) : f(a)+j in K}, K an ideal of the subring f(R1)+J."""
    if K.ring is not A.sub:
        raise ConstructionError("K must be an ideal of f(R1)+J")
    inK = {A.sub_embedding[k] for k in K.members}
    mask = mask_of(k for k, (_, y) in enumerate(A.pairs) if y in inK)
    return ideal_of_mask(A.ring, mask)


def transfer_ideals(A, I, K):
    return transfer_ideal_I(A, I), transfer_ideal_K(A, K)


def amalg_zd_envelope(A):
    """The sets A and B of the zero-divisor envelope, as masks on the amalgamation."""
    R1, R2, J = A.R1, A.R2, A.J
    nonzero_j = [j for j in J.members if j != 0]
    a_mask = mask_of(k for k, (r, _) in enumerate(A.pairs) if R1.zd_mask >> r & 1)
    b_mask = mask_of(k for k, (_, y) in enumerate(A.pairs)
                     if any(R2.mul[j, y] == 0 for j in nonzero_j))
    return a_mask, b_mask


def z_of_ideal(J):
    """Z(J) = {s : sj = 0 for some nonzero j in J}, as an element set of J.ring."""
    R = J.ring
    nz = [j for j in J.members if j != 0]
    if not nz:
        return 0
    return from_bool((R.mul[:, nz] == 0).any(axis=1))


# module amalgamation ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AmalgModule:
    module: object
    amalg: AmalgRing
    M1: object
    M2: object
    phi: tuple
    JM2: Submodule
    pairs: tuple   # element index -> (m1, phi(m1) + m2)

    def __repr__(self):
        return f"AmalgModule({self.module.label}, order={self.module.order})"


def _check_phi(M1, M2, f, phi):
    p = np.asarray(phi)
    if len(p) != M1.order:
        return "wrong length"
    if (p[M1.madd] != M2.madd[p[:, None], p[None, :]]).any():
        return "not additive"
    fr = np.asarray(f.images)
    if (p[M1.action] != M2.action[fr[:, None], p[None, :]]).any():
        return "not linear over f"
    return None


def amalg_module(A, M1, M2, phi, label=None):
    """M1 amal^phi JM2 = {(m1, phi(m1)+m2) : m2 in JM2} over the ring A."""
    if M1.ring is not A.R1 or M2.ring is not A.R2:
        raise ConstructionError("modules do not sit over the amalgamated rings")
    phi = tuple(int(v) for v in phi)
    bad = _check_phi(M1, M2, A.f, phi)
    if bad:
        raise ConstructionError(f"phi is {bad}")
    JM2 = ideal_times(A.J, submodule_of_mask(M2, M2.full))
    pairs = sorted({(m, int(M2.madd[phi[m], x])) for m in M1.elements for x in JM2.members})
    pos = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    madd = np.zeros((n, n), dtype=np.int32)
    for i, (a, y) in enumerate(pairs):
        for k, (b, z) in enumerate(pairs):
            madd[i, k] = pos[(int(M1.madd[a, b]), int(M2.madd[y, z]))]
    action = np.zeros((A.ring.order, n), dtype=np.int32)
    for s, (r, t) in enumerate(A.pairs):
        for i, (a, y) in enumerate(pairs):
            try:
                action[s, i] = pos[(int(M1.action[r, a]), int(M2.action[t, y]))]
            except KeyError:
                raise ConstructionError("scalar product leaves the amalgamated module") from None
    names = [f"({M1.names[a]},{M2.names[y]})" for a, y in pairs]
    mod = make_module(A.ring, madd, action, names, label=label or f"{M1.label} amal {M2.label}")
    return AmalgModule(mod, A, M1, M2, phi, JM2, tuple(pairs))


def dup_module(A, M):
    """M dup J over the duplication ring A = R dup J."""
    if not A.f.is_identity:
        raise ConstructionError("dup_module needs a duplication ring")
    return amalg_module(A, M, M, tuple(M.elements), label=f"{M.label} dup {A.J.describe()}")


def transfer_N1(AM, N1):
    """N1 amal^phi JM2 = {(m1, phi(m1)+m2) : m1 in N1}."""
    if N1.module is not AM.M1:
        raise ConstructionError("N1 must be a submodule of M1")
    mask = mask_of(k for k, (a, _) in enumerate(AM.pairs) if a in N1)
    return submodule_of_mask(AM.module, mask)


def transfer_N2(AM, N2):
    """bar N2^phi = {(m1, phi(m1)+m2) : phi(m1)+m2 in N2}."""
    if N2.module is not AM.M2:
        raise ConstructionError("N2 must be a submodule of M2")
    mask = mask_of(k for k, (_, y) in enumerate(AM.pairs) if y in N2)
    return submodule_of_mask(AM.module, mask)
