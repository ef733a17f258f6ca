"""Small dense linear algebra over cyclotomic fields.

Matrices are lists of rows of CycNum.  Everything is exact; sizes here are
tiny (ambient dimension at most a handful), so plain Gaussian elimination
is the right tool.
"""
from __future__ import annotations

from math import lcm

from .exactnum import CycNum, as_cyc

ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)


def common_order(rows) -> int:
    m = 1
    for row in rows:
        for x in row:
            m = lcm(m, x.order)
    return m


def promote_all(rows, m: int | None = None):
    rows = [[as_cyc(x) for x in row] for row in rows]
    m = common_order(rows) if m is None else m
    return [[x.promote(m) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = promote_all(rows)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None):
    """Basis of {v : M v = 0} as a list of vectors."""
    if not rows:
        return [[ONE if i == j else ZERO for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def det(mat) -> CycNum:
    a = promote_all(mat)
    n = len(a)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out = out * a[c][c]
        inv = a[c][c].inv()
        for i in range(c + 1, n):
            if not a[i][c].is_zero():
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def inverse(mat):
    n = len(mat)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(mat)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), ZERO) for row in a]


def span_key(vectors) -> tuple:
    """Canonical key of a subspace (RREF of a spanning set, minimal forms)."""
    red, _ = rref(vectors)
    return tuple(tuple(x.minimal() for x in row) for row in red)


def annihilator(vectors, ncols: int):
    return nullspace(vectors, ncols) if vectors else nullspace([], ncols)


def intersect(u, w, ncols: int):
    """Intersection of two subspaces given by spanning rows."""
    ann = annihilator(u, ncols) + annihilator(w, ncols)
    if not ann:
        return [[ONE if i == j else ZERO for j in range(ncols)] for i in range(ncols)]
    return nullspace(ann)
