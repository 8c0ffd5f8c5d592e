"""Dense linear algebra over a finite field.

Matrices are lists of rows of :class:`FieldElem`.  Everything here is plain
Gaussian elimination; sizes at this scale stay below a few hundred.
"""

from __future__ import annotations

from typing import Sequence

from .finitefield import FieldCtx, FieldElem

Matrix = list[list[FieldElem]]


def zeros(ctx: FieldCtx, rows: int, cols: int) -> Matrix:
    return [[ctx.zero] * cols for _ in range(rows)]


def identity(ctx: FieldCtx, n: int) -> Matrix:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matmul")
    zero = a[0][0].ctx.zero
    cols = len(b[0])
    out = []
    for row in a:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] = acc[j] + x * bk[j]
        out.append(acc)
    return out


def matvec(a: Matrix, v: Sequence[FieldElem]) -> list[FieldElem]:
    out = []
    for row in a:
        acc = v[0].ctx.zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def mat_map(a: Matrix, fn) -> Matrix:
    return [[fn(x) for x in row] for row in a]


def twist(a: Matrix, q: int) -> Matrix:
    """Entrywise x -> x^q."""
    return [[x**q for x in row] for row in a]


def _rref_prime(rows: Matrix, ctx: FieldCtx) -> tuple[Matrix, list[int]]:
    # same elimination as rref, on plain ints mod p
    p = ctx.p
    m = [[x.coeffs[0] for x in r] for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    elems = [ctx(k) for k in range(p)]
    return [[elems[x] for x in row] for row in m[:r]], pivots


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ctx = m[0][0].ctx
    if ctx.e == 1 and all(x.ctx is ctx for r in m for x in r):
        return _rref_prime(m, ctx)
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0}; each basis vector has a free coordinate 1."""
    if ncols is None:
        ncols = len(a[0])
    if not a:
        raise ValueError("nullspace of an empty matrix needs explicit context")
    ctx = a[0][0].ctx
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[FieldElem]) -> list[FieldElem] | None:
    """One solution of a x = b, or None when inconsistent."""
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    ctx = b[0].ctx
    x = [ctx.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def det(a: Matrix) -> FieldElem:
    n = len(a)
    m = [list(r) for r in a]
    ctx = m[0][0].ctx
    result = ctx.one
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return ctx.zero
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    ctx = a[0][0].ctx
    aug = [list(row) + idrow for row, idrow in zip(a, identity(ctx, n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def is_identity(a: Matrix) -> bool:
    return all((x.is_one() if i == j else not x) for i, row in enumerate(a) for j, x in enumerate(row))


def mat_order(a: Matrix, limit: int = 10**6) -> int:
    """Multiplicative order of an invertible matrix."""
    cur = a
    for k in range(1, limit + 1):
        if is_identity(cur):
            return k
        cur = matmul(cur, a)
    raise ValueError("order exceeds limit")
