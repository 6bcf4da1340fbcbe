"""Ideals of table rings: generation, enumeration, arithmetic, classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .bits import first_true, from_bool, mask_of, members, popcount, to_bool

IDEAL_CAP = 1 << 16


class CapacityError(RuntimeError):
    pass


class CheckFailure(AssertionError):
    """Two routes that must agree did not; carries the offending witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: object
    mask: int
    gens: tuple = ()

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring is self.ring and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.ring), self.mask))

    def __contains__(self, a):
        return bool(self.mask >> a & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"Ideal({self.describe()} in {self.ring.label or '?'})"

    def describe(self):
        if self.gens:
            return "<" + ",".join(self.ring.names[g] for g in self.gens) + ">"
        return "{" + ",".join(self.ring.names[a] for a in self.members) + "}"

    @property
    def members(self):
        return members(self.mask)

    @property
    def size(self):
        return popcount(self.mask)

    @property
    def is_proper(self):
        return self.mask != self.ring.full

    @cached_property
    def inside(self):
        return to_bool(self.mask, self.ring.order)

    @cached_property
    def flags(self):
        return classify_ideal(self)


@dataclass(frozen=True)
class IdealFlags:
    is_proper: bool
    is_prime: bool = False
    is_maximal: bool = False
    is_semiprime: bool = False
    is_r: bool = False
    is_pr: bool = False
    is_n: bool = False
    is_semi_n: bool = False
    is_semi_r: bool = False
    witnesses: dict = field(default_factory=dict, compare=False)

    def get(self, name):
        return getattr(self, name if name.startswith("is_") else "is_" + name)


FLAG_NAMES = ("proper", "prime", "maximal", "semiprime", "r", "pr", "n", "semi_n", "semi_r")

# (stronger, weaker) pairs that must hold on every classified ideal
IMPLICATIONS = (
    ("is_prime", "is_semiprime"),
    ("is_semiprime", "is_semi_r"),
    ("is_r", "is_semi_r"),
    ("is_r", "is_pr"),
    ("is_n", "is_semi_n"),
    ("is_semi_n", "is_semi_r"),
    ("is_maximal", "is_prime"),
)


def lattice_violations(flags):
    return [(a, b) for a, b in IMPLICATIONS if flags.get(a) and not flags.get(b)]


# construction --------------------------------------------------------------

def sum_masks(R, A, B):
    ia, ib = members(A), members(B)
    return from_bool(np.isin(np.arange(R.order), R.add[np.ix_(ia, ib)]))


def additive_closure(R, mask):
    mask |= 1
    while True:
        nxt = sum_masks(R, mask, mask)
        if nxt == mask:
            return mask
        mask = nxt


def principal_mask(R, g):
    key = ("principal", g)
    if key not in R.memo:
        R.memo[key] = from_bool(np.isin(np.arange(R.order), R.mul[g]))
    return R.memo[key]


def generate_ideal(R, gens):
    gens = tuple(int(g) for g in gens)
    mask = 1
    for g in gens:
        mask = sum_masks(R, mask, principal_mask(R, g))
    return Ideal(R, mask, gens)


def zero_ideal(R):
    return Ideal(R, 1, ())


def unit_ideal(R):
    return Ideal(R, R.full, (R.one,))


def all_ideals(R):
    """Every ideal of R once, ordered by (size, bitmask)."""
    if "ideals" in R.memo:
        return R.memo["ideals"]
    principals = {}
    for g in R.elements:
        principals.setdefault(principal_mask(R, g), g)
    found = {1: ()}
    queue = [1]
    while queue:
        mask = queue.pop()
        for pm, g in principals.items():
            if pm & ~mask == 0:
                continue
            j = sum_masks(R, mask, pm)
            if j not in found:
                found[j] = found[mask] + (g,)
                queue.append(j)
                if len(found) > IDEAL_CAP:
                    raise CapacityError(f"{R.label}: more than {IDEAL_CAP} ideals")
    out = [Ideal(R, m, found[m]) for m in sorted(found, key=lambda m: (popcount(m), m))]
    R.memo["ideals"] = out
    return out


def proper_ideals(R):
    return [I for I in all_ideals(R) if I.is_proper]


def ideal_of_mask(R, mask):
    """The Ideal object from all_ideals with this bitmask (shared cache)."""
    table = R.memo.get("ideal_index")
    if table is None:
        table = R.memo["ideal_index"] = {I.mask: I for I in all_ideals(R)}
    return table.get(mask) or Ideal(R, mask, ())


def is_ideal_mask(R, mask):
    if not mask & 1:
        return False
    inside = to_bool(mask, R.order)
    idx = np.flatnonzero(inside)
    return bool(inside[R.add[np.ix_(idx, idx)]].all() and inside[R.mul[:, idx]].all())


def _same_ring(I, J):
    if I.ring is not J.ring:
        raise ValueError("ideals belong to different rings")


def ideal_arith(mode, I, J):
    _same_ring(I, J)
    R = I.ring
    if mode == "sum":
        return ideal_of_mask(R, sum_masks(R, I.mask, J.mask))
    if mode == "intersect":
        return ideal_of_mask(R, I.mask & J.mask)
    if mode == "product":
        prods = R.mul[np.ix_(I.members, J.members)]
        return ideal_of_mask(R, additive_closure(R, mask_of(np.unique(prods))))
    raise ValueError(f"unknown mode {mode!r}")


def ideal_power(I, k):
    P = I
    for _ in range(k - 1):
        P = ideal_arith("product", P, I)
    return P


def radical(I):
    R = I.ring
    return ideal_of_mask(R, mask_of(a for a in R.elements if R.orbit_masks[a] & I.mask))


def colon_ideal(I, S):
    S = list(S)
    if not S:
        raise ValueError("colon by an empty set")
    R = I.ring
    ok = np.ones(R.order, dtype=bool)
    for s in S:
        ok &= I.inside[R.mul[:, s]]
    return ideal_of_mask(R, from_bool(ok))


def z_upper(I):
    """{r : rs in I for some s outside I}."""
    if not I.is_proper:
        raise ValueError("z_upper needs a proper ideal")
    R = I.ring
    hit = (I.inside[R.mul] & ~I.inside[None, :]).any(axis=1)
    return frozenset(members(from_bool(hit)))


def image_ideal(hom_images, I, target):
    """Ideal of target generated by the image of I."""
    return generate_ideal(target, sorted({hom_images[a] for a in I.members}))


# classification -----------------------------------------------------------

def classify_ideal(I):
    R = I.ring
    if not I.is_proper:
        return IdealFlags(is_proper=False)
    n = R.order
    inI = I.inside
    reg = R.reg
    nil = to_bool(R.nil_mask, n)
    rad = radical(I).inside
    sq_in = inI[R.squares]
    prod_in = inI[R.mul]
    witnesses = {}

    def holds(name, bad):
        w = first_true(bad)
        if w is not None:
            witnesses[name] = w
        return w is None

    semiprime = holds("semiprime", sq_in & ~inI)
    semi_r = holds("semi_r", sq_in & reg & ~inI)
    semi_n = holds("semi_n", sq_in & ~nil & ~inI)
    r = holds("r", prod_in & reg[:, None] & ~inI[None, :])
    pr = holds("pr", prod_in & reg[:, None] & ~rad[None, :])
    n_ideal = holds("n", prod_in & ~nil[:, None] & ~inI[None, :])
    prime = holds("prime", prod_in & ~inI[:, None] & ~inI[None, :])
    coset_one = np.zeros(n, dtype=bool)
    coset_one[R.add[R.one, I.members]] = True
    invertible_mod_I = coset_one[R.mul].any(axis=1)
    maximal = holds("maximal", ~inI & ~invertible_mod_I)
    flags = IdealFlags(True, prime, maximal, semiprime, r, pr, n_ideal, semi_n, semi_r, witnesses)
    bad = lattice_violations(flags)
    if bad:
        raise CheckFailure(f"implication lattice broken for {I!r}: {bad}", bad)
    return flags


def _power_table(R, k):
    x = np.full(R.order, R.one)
    idx = np.arange(R.order)
    for _ in range(k):
        x = R.mul[x, idx]
    return x


def semi_r_by_power(I, k, nonzero=False):
    """Whenever a^k in I (and a^k != 0 if nonzero) with Ann(a)=0, a in I."""
    R = I.ring
    pk = _power_table(R, k)
    bad = I.inside[pk] & R.reg & ~I.inside
    if nonzero:
        bad &= pk != 0
    return first_true(bad)


def char_crosscheck(I):
    """Decide semi r-ness four ways and insist they agree."""
    if not I.is_proper:
        raise ValueError("char_crosscheck needs a proper ideal")
    R = I.ring
    by_definition = I.flags.is_semi_r
    by_radical = radical(I).mask & ~(R.zd_mask | I.mask) == 0
    routes = {"definition": by_definition, "radical": by_radical}
    routes["nonzero-square"] = semi_r_by_power(I, 2, nonzero=True) is None
    for k in sorted({2, 3, R.order}):
        routes[f"power-{k}"] = semi_r_by_power(I, k) is None
    if len(set(routes.values())) != 1:
        raise CheckFailure(f"semi r routes disagree on {I!r}: {routes}", routes)
    return by_definition
