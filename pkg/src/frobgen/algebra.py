"""Finite-dimensional F_q-subalgebras of M_n(F_q) and their unit groups."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .finitefield import CapExceeded, FieldCtx, FieldElem, lift, new_context
from .multipoly import MatRF, MPoly, RatFun

#: Unit-group enumeration refuses algebras with more than this many elements.
DEFAULT_UNIT_CAP = 2**24

Matrix = list[list[FieldElem]]


class AlgebraError(ValueError):
    """Invalid algebra data (bad generators, dependent or non-closed basis)."""


@dataclass
class AlgebraSpec:
    p: int
    e: int
    n: int
    generators: list[Matrix]
    basis: list[Matrix] | None = None
    modulus: tuple[int, ...] | None = None

    @property
    def ctx(self) -> FieldCtx:
        return new_context(self.p, self.e, self.modulus)


@dataclass
class Algebra:
    spec: AlgebraSpec
    basis: list[Matrix]

    @property
    def ctx(self) -> FieldCtx:
        return self.basis[0][0][0].ctx

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.basis[0])

    def element(self, coords: Sequence[FieldElem]) -> Matrix:
        """The combination sum coords[i] * basis[i], over the field of coords."""
        L = coords[0].ctx
        n = self.n
        out = [[L.zero] * n for _ in range(n)]
        for c, b in zip(coords, self.basis):
            if not c:
                continue
            for r in range(n):
                for s in range(n):
                    if b[r][s]:
                        out[r][s] = out[r][s] + c * lift(b[r][s], L)
        return out


@dataclass
class UnitGroup:
    elements: list[Matrix]
    orders: list[int]
    abelian: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    def profile(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orders).items()))

    @property
    def exponent(self) -> int:
        from math import lcm

        out = 1
        for o in set(self.orders):
            out = lcm(out, o)
        return out


def _flatten(a: Matrix) -> list[FieldElem]:
    return [x for row in a for x in row]


def _unflatten(v: Sequence[FieldElem], n: int) -> Matrix:
    return [list(v[i * n : (i + 1) * n]) for i in range(n)]


def _check_matrix(a: Matrix, n: int, ctx: FieldCtx) -> None:
    if len(a) != n or any(len(r) != n for r in a):
        raise AlgebraError(f"expected a {n}x{n} matrix")
    for r in a:
        for x in r:
            if x.ctx is not ctx:
                raise AlgebraError("matrix entry outside the base field")


def _span_rref(mats: Sequence[Matrix]) -> tuple[list[list[FieldElem]], list[int]]:
    return linalg.rref([_flatten(a) for a in mats])


def close_basis(spec: AlgebraSpec) -> Algebra:
    """Basis of the unital subalgebra generated by ``spec.generators``.

    Products of the current span are adjoined until nothing new appears.
    The returned basis is the reduced row echelon basis of the span in the
    row-major flattening, so it depends only on the span.
    """
    ctx = spec.ctx
    n = spec.n
    for g in spec.generators:
        _check_matrix(g, n, ctx)
    current = [linalg.identity(ctx, n)] + [g for g in spec.generators]
    rows, _ = _span_rref(current)
    while True:
        basis = [_unflatten(r, n) for r in rows]
        products = [linalg.matmul(a, b) for a in basis for b in basis]
        new_rows, _ = linalg.rref(rows + [_flatten(x) for x in products])
        if len(new_rows) == len(rows):
            break
        rows = new_rows
    return Algebra(spec, [_unflatten(r, n) for r in rows])


def in_span(basis: Sequence[Matrix], x: Matrix) -> list[FieldElem] | None:
    """Coordinates of ``x`` in ``basis`` over the field of ``x``, or None."""
    L = x[0][0].ctx
    cols = [[lift(v, L) for v in _flatten(b)] for b in basis]
    mat = [list(r) for r in zip(*cols)]
    return linalg.solve(mat, _flatten(x))


def algebra_from_basis(spec: AlgebraSpec, basis: Sequence[Matrix]) -> Algebra:
    """Validate an explicit ordered basis (independence, identity, closure)."""
    ctx = spec.ctx
    n = spec.n
    if not basis:
        raise AlgebraError("empty basis")
    for b in basis:
        _check_matrix(b, n, ctx)
    if linalg.rank([_flatten(b) for b in basis]) != len(basis):
        raise AlgebraError("basis matrices are linearly dependent")
    if in_span(basis, linalg.identity(ctx, n)) is None:
        raise AlgebraError("identity matrix is not in the span of the basis")
    for a in basis:
        for b in basis:
            if in_span(basis, linalg.matmul(a, b)) is None:
                raise AlgebraError("span of the basis is not closed under multiplication")
    if spec.generators:
        closed = close_basis(AlgebraSpec(spec.p, spec.e, n, spec.generators, None, spec.modulus))
        if closed.m != len(basis) or any(in_span(basis, g) is None for g in closed.basis):
            raise AlgebraError("explicit basis does not span the algebra generated by the generators")
    return Algebra(spec, [list(map(list, b)) for b in basis])


def build_algebra(spec: AlgebraSpec) -> Algebra:
    if spec.basis is not None:
        return algebra_from_basis(spec, spec.basis)
    return close_basis(spec)


def generic_matrix(alg: Algebra) -> tuple[MatRF, RatFun]:
    """A(t) = sum t_i a_i over F_q[t1..tm], and d = det A(t)."""
    ctx, m, n = alg.ctx, alg.m, alg.n
    rows = []
    for r in range(n):
        row = []
        for s in range(n):
            terms = {}
            for i, b in enumerate(alg.basis):
                if b[r][s]:
                    terms[tuple(int(j == i) for j in range(m))] = b[r][s]
            row.append(MPoly(ctx, m, terms))
        rows.append(row)
    A = MatRF(rows)
    d = A.det()
    if d.is_zero():
        raise AlgebraError("det A(t) vanishes identically; the basis does not span a unital algebra")
    return A, d


def _coordinate_vectors(ctx: FieldCtx, m: int):
    elems = list(ctx.elements())
    return itertools.product(elems, repeat=m)


def unit_group(alg: Algebra, cap: int = DEFAULT_UNIT_CAP) -> UnitGroup:
    """Enumerate all q^m members of the algebra and keep the invertible ones."""
    size = alg.q**alg.m
    if size > cap:
        raise CapExceeded(f"unit group enumeration needs {size} candidates (cap {cap})")
    units = []
    for coords in _coordinate_vectors(alg.ctx, alg.m):
        x = alg.element(list(coords))
        if linalg.det(x):
            units.append(x)
    orders = [linalg.mat_order(u) for u in units]
    # commutation is bilinear: check it on a basis of the span of the units
    span_rows, _ = linalg.rref([_flatten(u) for u in units])
    sb = [_unflatten(r, alg.n) for r in span_rows]
    abelian = all(
        linalg.matmul(a, b) == linalg.matmul(b, a) for i, a in enumerate(sb) for b in sb[i + 1 :]
    )
    return UnitGroup(units, orders, abelian)


def membership(x: Matrix, alg: Algebra) -> list[FieldElem] | None:
    """Coordinates xi with x = sum xi_i a_i, over the field of ``x``."""
    if len(x) != alg.n or any(len(r) != alg.n for r in x):
        raise AlgebraError("matrix size does not match the algebra")
    return in_span(alg.basis, x)


@dataclass(frozen=True)
class Fingerprint:
    order: int
    profile: tuple[tuple[int, int], ...]
    abelian: bool

    def text(self) -> str:
        prof = ",".join(f"{k}:{v}" for k, v in self.profile)
        return f"order={self.order} profile={prof} abelian={'true' if self.abelian else 'false'}"

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "profile": {str(k): v for k, v in self.profile},
            "abelian": self.abelian,
        }


def group_fingerprint(ug: UnitGroup) -> Fingerprint:
    return Fingerprint(ug.order, tuple(ug.profile().items()), ug.abelian)
