"""Finite commutative unital rings stored as addition/multiplication tables.

Element index 0 is always the additive identity. Element sets (units, zero
divisors, ideals) are kept as int bitmasks so they hash and compare cheaply.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .bits import first_true, from_bool, full_mask, mask_of, members, to_bool

# Axiom checking is cubic in the order; above this it only runs on request.
VERIFY_LIMIT = 64
HARD_CAP = 4096


class RingError(ValueError):
    """Raised when a table does not describe an admissible ring."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


@dataclass(frozen=True)
class RingFlags:
    is_uz: bool
    is_reduced: bool
    is_domain: bool
    is_field: bool
    is_boolean: bool


@dataclass(frozen=True, eq=False)
class RingTable:
    add: np.ndarray
    mul: np.ndarray
    one: int
    names: tuple
    label: str = ""
    aliases: dict = field(default_factory=dict)
    factors: tuple = ()
    memo: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        return f"RingTable({self.label or '?'}, order={self.order})"

    @property
    def order(self):
        return len(self.names)

    @property
    def elements(self):
        return range(self.order)

    @cached_property
    def lookup(self):
        table = dict(self.aliases)
        table.update({name: i for i, name in enumerate(self.names)})
        return table

    def element(self, name):
        """Resolve a display name (or alias) to its index."""
        key = name if isinstance(name, str) else str(name)
        key = key.replace(" ", "")
        try:
            return self.lookup[key]
        except KeyError:
            raise RingError(f"{name!r} is not an element of {self.label or 'ring'}") from None

    def name(self, a):
        return self.names[a]

    @cached_property
    def neg(self):
        return np.argmax(self.add == 0, axis=1)

    def sub(self, a, b):
        return int(self.add[a, self.neg[b]])

    def power(self, a, k):
        x = self.one
        for _ in range(k):
            x = int(self.mul[x, a])
        return x

    def multiple(self, k, a):
        """k*a for a non-negative integer k."""
        x = 0
        for _ in range(k):
            x = int(self.add[x, a])
        return x

    @cached_property
    def squares(self):
        return np.diagonal(self.mul).copy()

    @cached_property
    def full(self):
        return full_mask(self.order)

    # element sets -----------------------------------------------------

    @cached_property
    def units_mask(self):
        return from_bool((self.mul == self.one).any(axis=1))

    @cached_property
    def zd_mask(self):
        kills = self.mul[:, 1:] == 0
        return from_bool(kills.any(axis=1))

    @cached_property
    def reg_mask(self):
        return self.full & ~self.zd_mask

    @cached_property
    def reg(self):
        return to_bool(self.reg_mask, self.order)

    @cached_property
    def orbit_masks(self):
        """For each a, the mask of {a, a^2, ..., a^order}."""
        out = []
        for a in self.elements:
            m, x = 0, a
            for _ in range(self.order):
                if m >> x & 1:
                    break
                m |= 1 << x
                x = int(self.mul[x, a])
            out.append(m)
        return out

    @cached_property
    def nil_mask(self):
        return mask_of(a for a in self.elements if self.orbit_masks[a] & 1)

    @cached_property
    def additive_index(self):
        """k such that a = k*1, for rings whose additive group is generated by 1."""
        idx, x = {}, 0
        for k in range(self.order):
            if x in idx:
                break
            idx[x] = k
            x = int(self.add[x, self.one])
        return idx if len(idx) == self.order else None

    @property
    def characteristic(self):
        x, k = self.one, 1
        while x != 0:
            x = int(self.add[x, self.one])
            k += 1
        return k


def make_ring(add, mul, one, names, label="", aliases=None, factors=(), verify=None):
    """Build a RingTable, checking axioms when the order is small enough."""
    add = np.asarray(add, dtype=np.int32)
    mul = np.asarray(mul, dtype=np.int32)
    n = len(names)
    if n < 2:
        raise RingError("the zero ring is not admissible (need 1 != 0)")
    if n > HARD_CAP:
        raise RingError(f"ring order {n} exceeds hard cap {HARD_CAP}")
    R = RingTable(add, mul, int(one), tuple(names), label, dict(aliases or {}), tuple(factors))
    if verify is None:
        verify = n <= VERIFY_LIMIT
    if verify:
        bad = verify_ring_axioms(R)
        if bad:
            raise RingError(f"{label or 'table'}: {bad[0]}")
    return R


def build_zn(n):
    if n < 2:
        raise RingError(f"Z{n}: need n >= 2")
    i = np.arange(n)
    return make_ring(
        (i[:, None] + i[None, :]) % n,
        (i[:, None] * i[None, :]) % n,
        1 % n,
        [str(k) for k in range(n)],
        label=f"Z{n}",
    )


def build_product(factors, label=None):
    factors = list(factors)
    if len(factors) < 2:
        raise RingError("a product needs at least two factors")
    orders = [F.order for F in factors]
    n = int(np.prod(orders))
    if n > HARD_CAP:
        raise RingError(f"product order {n} exceeds hard cap {HARD_CAP}")
    coords = list(itertools.product(*[range(k) for k in orders]))
    strides = np.cumprod([1] + orders[::-1][:-1])[::-1]
    C = np.array(coords, dtype=np.int64)
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for pos, F in enumerate(factors):
        col = C[:, pos]
        add += F.add[np.ix_(col, col)] * strides[pos]
        mul += F.mul[np.ix_(col, col)] * strides[pos]
    one = int(sum(F.one * s for F, s in zip(factors, strides)))
    names = ["(" + ",".join(F.names[c] for F, c in zip(factors, cs)) + ")" for cs in coords]
    if label is None:
        label = " x ".join(F.label for F in factors)
    return make_ring(add, mul, one, names, label=label, factors=tuple(factors))


def product_coords(R):
    """Per-element factor indices for a ring built by build_product."""
    orders = [F.order for F in R.factors]
    return list(itertools.product(*[range(k) for k in orders]))


def verify_ring_axioms(R):
    """Return every failed ring axiom with its first witness; [] means a valid ring."""
    n = R.order
    add, mul = np.asarray(R.add), np.asarray(R.mul)
    out = []

    def report(axiom, arr):
        w = first_true(arr)
        if w is not None:
            out.append(Violation(axiom, w))

    if n < 2:
        out.append(Violation("nonzero", (n,)))
        return out
    if add.shape != (n, n) or mul.shape != (n, n):
        out.append(Violation("shape", (add.shape, mul.shape)))
        return out
    rng = (add < 0) | (add >= n) | (mul < 0) | (mul >= n)
    if rng.any():
        report("closure", rng)
        return out
    if not 0 <= R.one < n:
        out.append(Violation("unit element", (R.one,)))
        return out
    i = np.arange(n)
    report("additive identity", add[0] != i)
    report("additive commutativity", add != add.T)
    report("additive inverse", ~(add == 0).any(axis=1)[:, None])
    report("additive associativity", _assoc_fail(add))
    report("multiplicative commutativity", mul != mul.T)
    report("multiplicative associativity", _assoc_fail(mul))
    report("multiplicative identity", (mul[R.one] != i)[None, :])
    # a(b+c) = ab + ac
    lhs = mul[:, add]                                  # [a, b, c] -> a*(b+c)
    rhs = add[mul[:, :, None], mul[:, None, :]]        # ab + ac
    report("distributivity", lhs != rhs)
    return out


def _assoc_fail(op):
    # (ab)c vs a(bc), indexed [a, b, c]
    left = op[op[:, :, None], np.arange(op.shape[0])[None, None, :]]
    right = op[np.arange(op.shape[0])[:, None, None], op[None, :, :]]
    return left != right


def units(R):
    return frozenset(members(R.units_mask))


def zero_divisors(R):
    """Zero divisors including 0; the complement is the set of regular elements."""
    return frozenset(members(R.zd_mask))


def regular_elements(R):
    return frozenset(members(R.reg_mask))


def annihilator_elem(R, a):
    from .ideals import Ideal

    return Ideal(R, from_bool(R.mul[a] == 0), ())


def nilradical(R):
    from .ideals import Ideal

    return Ideal(R, R.nil_mask, ())


def ring_flags(R):
    everything = R.full
    is_uz = (R.units_mask | R.zd_mask) == everything
    is_reduced = R.nil_mask == 1
    is_domain = R.zd_mask == 1
    is_field = R.units_mask == everything & ~1
    is_boolean = bool((R.squares == np.arange(R.order)).all())
    return RingFlags(is_uz, is_reduced, is_domain, is_field, is_boolean)
