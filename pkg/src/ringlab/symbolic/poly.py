"""Integer polynomials as coefficient tuples (constant term first), plus the
few ideal shapes of Z[x] that have a cheap exact membership test."""

from __future__ import annotations

from dataclasses import dataclass


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def padd(f, g):
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def pmul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def ppow(f, k):
    out = (1,)
    for _ in range(k):
        out = pmul(out, f)
    return out


def peval(f, c):
    v = 0
    for a in reversed(f):
        v = v * c + a
    return v


def pmod_monic(f, g):
    """Remainder of f by a monic g; exact over Z."""
    g = trim(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(trim(f))
    dg = len(g) - 1
    while len(r) - 1 >= dg and r:
        q = r[-1]
        shift = len(r) - 1 - dg
        for i, b in enumerate(g):
            r[shift + i] -= q * b
        r = list(trim(r))
    return tuple(r)


def format_poly(f):
    f = trim(f)
    if not f:
        return "0"
    parts = []
    for i, a in enumerate(f):
        if a == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i and abs(a) == 1:
            coef = "-" if a < 0 else ""
        else:
            coef = str(a)
        parts.append(coef + mono)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


@dataclass(frozen=True)
class PolyIdeal:
    """kind "mc": <m, x - c>, f in I iff f(c) = 0 mod m.
    kind "monic": <g>^k for monic g, f in I iff g^k divides f."""

    kind: str
    m: int = 0
    c: int = 0
    g: tuple = ()
    k: int = 1

    def __contains__(self, f):
        f = trim(f)
        if self.kind == "mc":
            return peval(f, self.c) % self.m == 0
        if self.kind == "monic":
            return not pmod_monic(f, ppow(self.g, self.k))
        raise ValueError(self.kind)

    @property
    def is_proper(self):
        if self.kind == "mc":
            return self.m != 1
        return len(trim(self.g)) > 1

    def describe(self):
        if self.kind == "mc":
            return f"<{self.m}, {format_poly((-self.c, 1))}>"
        base = format_poly(self.g)
        return f"<{base}>" if self.k == 1 else f"<{base}>^{self.k}"


def poly_ideal_from_gens(gens):
    """Recognize <g> (g monic) or <m, x + c> from generator coefficient tuples."""
    polys = [trim((g,) if isinstance(g, int) else g) for g in gens]
    if len(polys) == 1 and polys[0] and polys[0][-1] == 1:
        return PolyIdeal("monic", g=polys[0])
    consts = [p for p in polys if len(p) <= 1]
    linear = [p for p in polys if len(p) == 2 and p[1] == 1]
    if len(polys) == 2 and len(consts) == 1 and len(linear) == 1 and consts[0]:
        return PolyIdeal("mc", m=abs(consts[0][0]), c=-linear[0][0])
    raise ValueError("Z[x] ideals are limited to <g> with g monic and <m, x + c>")
