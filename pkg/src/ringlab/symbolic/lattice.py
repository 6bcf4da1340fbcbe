"""Integer lattices: row-style Hermite normal form and Smith normal form with
transforms. Entries are Python ints throughout, so nothing overflows."""

from __future__ import annotations

from math import gcd


def _copy(A):
    return [list(map(int, row)) for row in A]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def hnf(rows, n=None):
    """Row-style HNF of the lattice spanned by rows: echelon, positive pivots,
    entries above each pivot reduced into [0, pivot). Zero rows dropped."""
    A = [r for r in _copy(rows) if any(r)]
    if n is None:
        n = len(A[0]) if A else 0
    out = []
    col = 0
    while A and col < n:
        live = [r for r in A if r[col] != 0]
        rest = [r for r in A if r[col] == 0]
        if not live:
            col += 1
            continue
        # Euclid on the column until one row remains with a nonzero entry
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append((col, p))
        A = rest
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        ci, pi = out[i]
        for k in range(i):
            ck, pk = out[k]
            q = pk[ci] // pi[ci]
            if q:
                out[k] = (ck, [a - q * b for a, b in zip(pk, pi)])
    return [p for _, p in out]


def hnf_pivots(H):
    return [next(j for j, a in enumerate(row) if a) for row in H]


def in_lattice(H, v):
    """Membership of v in the lattice with HNF basis H (triangular solve)."""
    v = list(map(int, v))
    for row, c in zip(H, hnf_pivots(H)):
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def smith(A):
    """Return (D, P, Q) with P*A*Q = diag(D) (padded with zeros), P and Q
    unimodular, and D[i] | D[i+1]. A is m x n."""
    A = _copy(A)
    m = len(A)
    n = len(A[0]) if m else 0
    P, Q = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (A, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        P[dst] = [a + q * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, q):
        for M in (A, Q):
            for row in M:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            P[t] = [-a for a in P[t]]
        t += 1
    D = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return D, P, Q


def lcm(a, b):
    return a // gcd(a, b) * b if a and b else 0
