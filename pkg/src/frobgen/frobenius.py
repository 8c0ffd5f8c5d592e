"""Frobenius modules X -> A X^(q), cyclic bases and additive polynomials.

The symbolic pipeline runs over F_q(t1..tm):

    A(t) --cyclic_vector--> (v, N) --companion_form--> Delta
         --emit_additive_poly--> f(Y) = Y^(q^n) - sum a_i Y^(q^i)

where N has columns v, phi(v), ..., phi^(n-1)(v) and
Delta = N^-1 A N^(q) is a companion matrix with last column (a_0..a_{n-1}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence, Union

from . import linalg
from .finitefield import FieldCtx, FieldElem, lift, new_context, DEFAULT_ENUM_CAP
from .multipoly import (
    MatRF,
    RatFun,
    YPoly,
    adjugate,
    default_names,
    format_mpoly,
    parse_ratfun,
    rf_equal,
)
from .upoly import UPoly, format_upoly

Matrix = list[list[FieldElem]]


class CyclicVectorNotFound(RuntimeError):
    """No candidate in the scanned set generates the module."""


class SpecializationError(ValueError):
    """The evaluation point violates a genericity precondition."""


class CompanionShapeError(ArithmeticError):
    """N^-1 A N^(q) failed to have companion shape (an arithmetic bug)."""


@dataclass
class FrobeniusModule:
    """phi(X) = matrix * X^(q); symbolic (MatRF) or concrete (field matrix)."""

    matrix: Union[MatRF, Matrix]
    q: int

    @property
    def symbolic(self) -> bool:
        return isinstance(self.matrix, MatRF)

    @property
    def n(self) -> int:
        return self.matrix.n if self.symbolic else len(self.matrix)

    def apply(self, x):
        """phi(x) for a column vector x."""
        if self.symbolic:
            xq = [c.qpower(self.q) for c in x]
            rows = self.matrix.rows
            out = []
            for r in rows:
                acc = None
                for a, b in zip(r, xq):
                    if a.is_zero() or b.is_zero():
                        continue
                    t = a * b
                    acc = t if acc is None else acc + t
                out.append(acc if acc is not None else RatFun.const(self.matrix.ctx, self.matrix.m, 0))
            return out
        return linalg.matvec(self.matrix, [c**self.q for c in x])


@dataclass
class CompanionForm:
    v: list
    N: Union[MatRF, Matrix]
    delta: MatRF
    lastcol: list[RatFun]
    det_n: RatFun


@dataclass
class AdditivePolynomial:
    """f(Y) = Y^(q^n) - a_{n-1} Y^(q^(n-1)) - ... - a_0 Y over F_q(t).

    ``det_n`` and ``det_a`` are guards: specializations must keep both
    nonzero.
    """

    q: int
    n: int
    coeffs: list[RatFun]
    det_n: RatFun | None = None
    det_a: RatFun | None = None

    @property
    def ctx(self) -> FieldCtx:
        return self.coeffs[0].ctx

    @property
    def m(self) -> int:
        return self.coeffs[0].m

    @property
    def degree(self) -> int:
        return self.q**self.n

    def as_ypoly(self) -> YPoly:
        ctx, m = self.ctx, self.m
        zero = RatFun.const(ctx, m, 0)
        cs = [zero] * (self.degree + 1)
        cs[-1] = RatFun.const(ctx, m, 1)
        for i, a in enumerate(self.coeffs):
            cs[self.q**i] = -a
        return YPoly(cs, ctx, m)

    def render(self) -> str:
        """Human form following the sign convention, e.g.
        ``Y^9 - (t1^3 + t1*t2^2)*Y^3 - (...)*Y``."""
        parts = [f"Y^{self.degree}"]
        for i in range(self.n - 1, -1, -1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            mono = "Y" if self.q**i == 1 else f"Y^{self.q**i}"
            parts.append(f"({a.format()})*{mono}")
        return " - ".join(parts)

    def to_dict(self) -> dict:
        ctx = self.ctx
        out = {
            "p": ctx.p,
            "e": ctx.e,
            "modulus": list(ctx.modulus),
            "m": self.m,
            "q": self.q,
            "n": self.n,
            "coeffs": [[format_mpoly(a.num), format_mpoly(a.den)] for a in self.coeffs],
            "rendering": self.render(),
        }
        if self.det_n is not None:
            out["det_n"] = [format_mpoly(self.det_n.num), format_mpoly(self.det_n.den)]
        if self.det_a is not None:
            out["det_a"] = [format_mpoly(self.det_a.num), format_mpoly(self.det_a.den)]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "AdditivePolynomial":
        ctx = new_context(int(data["p"]), int(data.get("e", 1)), data.get("modulus"))
        m = int(data["m"])

        def rf(pair):
            if isinstance(pair, str):
                return parse_ratfun(pair, ctx, m)
            num, den = pair
            return parse_ratfun(f"({num})/({den})", ctx, m)

        coeffs = [rf(c) for c in data["coeffs"]]
        if len(coeffs) != int(data["n"]):
            raise ValueError("coefficient count does not match n")
        det_n = rf(data["det_n"]) if "det_n" in data else None
        det_a = rf(data["det_a"]) if "det_a" in data else None
        return cls(int(data["q"]), int(data["n"]), coeffs, det_n, det_a)


@dataclass
class ConcreteAdditivePolynomial:
    """An additive polynomial with coefficients in a finite field L."""

    q: int
    n: int
    coeffs: list[FieldElem]

    @property
    def ctx(self) -> FieldCtx:
        return self.coeffs[0].ctx

    def __call__(self, y: FieldElem) -> FieldElem:
        """f(y) for y in any extension of L."""
        K = y.ctx
        acc = K.zero
        power = y
        for a in self.coeffs:
            if a:
                acc = acc - lift(a, K) * power
            power = power**self.q
        return acc + power

    def to_upoly(self) -> UPoly:
        ctx = self.ctx
        cs = [ctx.zero] * (self.q**self.n + 1)
        cs[-1] = ctx.one
        for i, a in enumerate(self.coeffs):
            cs[self.q**i] = cs[self.q**i] - a
        return UPoly(ctx, cs)

    def format(self) -> str:
        return format_upoly(self.to_upoly())

    def to_dict(self) -> dict:
        ctx = self.ctx
        return {
            "p": ctx.p,
            "e": ctx.e,
            "modulus": list(ctx.modulus),
            "q": self.q,
            "n": self.n,
            "coeffs": [str(a) for a in self.coeffs],
            "polynomial": self.format(),
        }


@dataclass
class IntegralityCertificate:
    """T^(q^k) - sum_j c_j T^(q^j) annihilates every solution coordinate."""

    q: int
    k: int
    coeffs: list[FieldElem]
    mats: list[Matrix] = field(default_factory=list, repr=False)

    def __call__(self, y: FieldElem) -> FieldElem:
        K = y.ctx
        acc = K.zero
        power = y
        for c in self.coeffs:
            if c:
                acc = acc - lift(c, K) * power
            power = power**self.q
        return acc + power

    def format(self) -> str:
        parts = [f"T^{self.q ** self.k}"]
        for j in range(self.k - 1, -1, -1):
            c = self.coeffs[j]
            if c:
                mono = "T" if j == 0 else f"T^{self.q ** j}"
                parts.append(mono if c.is_one() else f"{c}*{mono}")
        return " - ".join(parts)


# -- cyclic vectors -------------------------------------------------------------


def _krylov_symbolic(fm: FrobeniusModule, v: list[RatFun]) -> MatRF:
    cols = [v]
    for _ in range(fm.n - 1):
        cols.append(fm.apply(cols[-1]))
    return MatRF.from_columns(cols)


def _krylov_concrete(fm: FrobeniusModule, v: list[FieldElem]) -> Matrix:
    cols = [v]
    for _ in range(fm.n - 1):
        cols.append(fm.apply(cols[-1]))
    return [list(r) for r in zip(*cols)]


def _symbolic_candidates(ctx: FieldCtx, m: int, n: int):
    elems = list(ctx.elements())
    for combo in itertools.product(elems, repeat=n):
        if any(combo):
            yield [RatFun.const(ctx, m, c) for c in combo]
    # fallback: entries 0, 1, t1..tm with at least one variable entry
    pool = [RatFun.const(ctx, m, 0), RatFun.const(ctx, m, 1)] + [RatFun.var(ctx, m, i) for i in range(m)]
    for idx in itertools.product(range(len(pool)), repeat=n):
        if max(idx) >= 2:
            yield [pool[i] for i in idx]


def cyclic_vector(fm: FrobeniusModule, override=None):
    """Return (v, N) with N = (v | phi(v) | ... | phi^(n-1)(v)) nonsingular.

    Candidates: nonzero constant vectors over F_q, leftmost coordinate most
    significant; for symbolic modules then vectors with entries in
    {0, 1, t1, ..., tm} containing at least one variable.
    """
    if fm.symbolic:
        A = fm.matrix
        ctx, m = A.ctx, A.m
        if override is not None:
            v = [x if isinstance(x, RatFun) else RatFun.const(ctx, m, x) for x in override]
            if len(v) != fm.n:
                raise ValueError(f"cyclic vector must have length {fm.n}")
            N = _krylov_symbolic(fm, v)
            if N.det().is_zero():
                raise CyclicVectorNotFound("the given vector does not generate the module (det N = 0)")
            return v, N
        for v in _symbolic_candidates(ctx, m, fm.n):
            N = _krylov_symbolic(fm, v)
            if not N.det().is_zero():
                return v, N
        raise CyclicVectorNotFound("no cyclic vector among constant or single-variable candidates")
    B = fm.matrix
    L = B[0][0].ctx
    if override is not None:
        v = [L(x) if not isinstance(x, FieldElem) else lift(x, L) for x in override]
        N = _krylov_concrete(fm, v)
        if not linalg.det(N):
            raise CyclicVectorNotFound("the given vector does not generate the module (det N = 0)")
        return v, N
    base = _base_field_of(L, fm.q)
    for pool in (base, L):
        if pool.q ** fm.n > DEFAULT_ENUM_CAP:
            break
        elems = [lift(x, L) for x in pool.elements()]
        for combo in itertools.product(elems, repeat=fm.n):
            if any(combo):
                N = _krylov_concrete(fm, list(combo))
                if linalg.det(N):
                    return list(combo), N
        if pool is L:
            break
    raise CyclicVectorNotFound("module over a finite field has no cyclic vector in the scanned set")


def _base_field_of(L: FieldCtx, q: int) -> FieldCtx:
    e = 0
    x = q
    while x > 1:
        x //= L.p
        e += 1
    return new_context(L.p, e) if L.e != e else L


# -- companion form and additive polynomial -------------------------------------


def companion_form(fm: FrobeniusModule, v, N: MatRF) -> CompanionForm:
    """Delta = N^-1 A N^(q) as adj(N) A N^(q) over the single denominator det N.

    Companion shape is asserted as a polynomial identity, as is
    det(Delta) = det(A) det(N)^(q-1).
    """
    if not fm.symbolic:
        raise TypeError("companion_form works on symbolic modules")
    A = fm.matrix
    n = A.n
    det_n = N.det()
    if det_n.is_zero():
        raise ValueError("N is singular")
    P = adjugate(N) * A * N.qtwist(fm.q)
    inv_det = det_n.inverse()
    rows = [[x * inv_det for x in r] for r in P.rows]
    delta = MatRF(rows)
    for i in range(n):
        for j in range(n - 1):
            want = 1 if i == j + 1 else 0
            if not rf_equal(delta.rows[i][j], RatFun.const(A.ctx, A.m, want)):
                raise CompanionShapeError(f"Delta[{i}][{j}] = {delta.rows[i][j]} breaks companion shape")
    lastcol = delta.col(n - 1)
    # det Delta = (-1)^(n-1) a_0 must equal det A * det N^(q-1)
    lhs = lastcol[0] if (n - 1) % 2 == 0 else -lastcol[0]
    rhs = A.det() * det_n ** (fm.q - 1)
    if not rf_equal(lhs, rhs):
        raise CompanionShapeError("det(Delta) != det(A) det(N)^(q-1)")
    return CompanionForm(v, N, delta, lastcol, det_n)


def check_column_recurrence(fm: FrobeniusModule, N: MatRF) -> bool:
    cols = [N.col(j) for j in range(N.n)]
    for k in range(N.n - 1):
        nxt = fm.apply(cols[k])
        if not all(rf_equal(a, b) for a, b in zip(nxt, cols[k + 1])):
            return False
    return True


def star(B: MatRF) -> MatRF:
    """B* = (B^-1)^T."""
    return B.inv().T


def emit_additive_poly(cf: CompanionForm, q: int, det_a: RatFun | None = None) -> AdditivePolynomial:
    a0 = cf.lastcol[0]
    if a0.is_zero():
        raise ArithmeticError("a_0 = 0: the additive polynomial would be inseparable")
    return AdditivePolynomial(q, len(cf.lastcol), list(cf.lastcol), cf.det_n, det_a)


# -- specialization -------------------------------------------------------------


def _as_point(xi: Sequence, field: FieldCtx | None) -> list[FieldElem]:
    if field is None:
        field = next(x.ctx for x in xi if isinstance(x, FieldElem))
    return [x if isinstance(x, FieldElem) else field.parse(x) for x in xi]


def specialize_polynomial(
    f: AdditivePolynomial, xi: Sequence, field: FieldCtx | None = None
) -> ConcreteAdditivePolynomial:
    """f(Y; xi); rejects points where det N or det A vanish."""
    pt = _as_point(xi, field)
    if len(pt) != f.m:
        raise SpecializationError(f"expected {f.m} coordinates, got {len(pt)}")
    for name, guard in (("det N", f.det_n), ("det A", f.det_a)):
        if guard is not None:
            try:
                val = guard.eval(pt)
            except ZeroDivisionError:
                raise SpecializationError(f"denominator of {name} vanishes at the point") from None
            if not val:
                raise SpecializationError(f"evaluation point annihilates {name}")
    try:
        coeffs = [a.eval(pt) for a in f.coeffs]
    except ZeroDivisionError:
        raise SpecializationError("a coefficient denominator vanishes at the point") from None
    if not coeffs[0]:
        raise SpecializationError("a_0 vanishes at the point (inseparable specialization)")
    return ConcreteAdditivePolynomial(f.q, f.n, coeffs)


def specialize_module(fm: FrobeniusModule, xi: Sequence, field: FieldCtx | None = None) -> FrobeniusModule:
    """A(xi) as a concrete module; rejects points with det A(xi) = 0."""
    if not fm.symbolic:
        raise TypeError("module is already concrete")
    pt = _as_point(xi, field)
    if len(pt) != fm.matrix.m:
        raise SpecializationError(f"expected {fm.matrix.m} coordinates, got {len(pt)}")
    try:
        B = fm.matrix.eval(pt)
    except ZeroDivisionError:
        raise SpecializationError("an entry denominator vanishes at the point") from None
    if not linalg.det(B):
        raise SpecializationError("d(xi) = det A(xi) = 0")
    return FrobeniusModule(B, fm.q)


def specialize(obj, xi: Sequence, field: FieldCtx | None = None):
    if isinstance(obj, AdditivePolynomial):
        return specialize_polynomial(obj, xi, field)
    if isinstance(obj, FrobeniusModule):
        return specialize_module(obj, xi, field)
    raise TypeError(f"cannot specialize {type(obj).__name__}")


# -- integrality -----------------------------------------------------------------


def integrality_certificate(fm: FrobeniusModule) -> IntegralityCertificate:
    """First linear dependence B_k = sum c_j B_j for B_0 = I,
    B_k = (A^-1)^(q^(k-1)) B_(k-1), over the base field of the module."""
    if fm.symbolic:
        raise TypeError("integrality certificates are computed over finite base fields only")
    A = fm.matrix
    L = A[0][0].ctx
    n = len(A)
    Ainv = linalg.inverse(A)
    mats = [linalg.identity(L, n)]
    twisted = Ainv
    flat = lambda M: [x for r in M for x in r]  # noqa: E731
    for k in range(1, n * n + 2):
        Bk = linalg.matmul(twisted, mats[-1])
        cols = [flat(M) for M in mats]
        system = [list(r) for r in zip(*cols)]
        sol = linalg.solve(system, flat(Bk))
        if sol is not None:
            return IntegralityCertificate(fm.q, k, sol, mats + [Bk])
        mats.append(Bk)
        twisted = linalg.twist(twisted, fm.q)
    raise AssertionError("no dependence within n^2 + 1 steps")  # pragma: no cover


def format_matrix(M, names=None) -> list[list[str]]:
    if isinstance(M, MatRF):
        return M.format(names)
    return [[str(x) for x in r] for r in M]


__all__ = [
    "AdditivePolynomial",
    "CompanionForm",
    "CompanionShapeError",
    "ConcreteAdditivePolynomial",
    "CyclicVectorNotFound",
    "FrobeniusModule",
    "IntegralityCertificate",
    "SpecializationError",
    "check_column_recurrence",
    "companion_form",
    "cyclic_vector",
    "default_names",
    "emit_additive_poly",
    "integrality_certificate",
    "specialize",
    "specialize_module",
    "specialize_polynomial",
    "star",
]
