"""Sparse multivariate polynomials, formal fractions and matrices of them.

An :class:`MPoly` in ``m`` variables ``t1..tm`` maps exponent tuples to
nonzero field elements.  Graded-lex (total degree, then lexicographic with
``t1`` most significant) is the one term order used for leading terms,
display and serialization.

:class:`RatFun` is a pair ``num/den`` with light normalization only: common
monomial content and a scalar are stripped, and the denominator is cleared
whenever it divides the numerator exactly.  No multivariate gcd is attempted,
so equality is always decided by cross-multiplication.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .finitefield import FieldCtx, FieldElem, FieldError, lift

MAX_EXPONENT = 2**31 - 1

Exp = tuple[int, ...]


def grlex_key(exp: Exp):
    return (sum(exp), exp)


class MPoly:
    __slots__ = ("ctx", "m", "terms")

    def __init__(self, ctx: FieldCtx, m: int, terms: dict | None = None):
        self.ctx = ctx
        self.m = m
        self.terms: dict[Exp, FieldElem] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != m:
                    raise ValueError(f"exponent {exp} has wrong length for {m} variables")
                c = ctx(c)
                if c:
                    self.terms[exp] = c

    @classmethod
    def _raw(cls, ctx, m, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.m = m
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, ctx: FieldCtx, m: int) -> "MPoly":
        return cls._raw(ctx, m, {})

    @classmethod
    def const(cls, ctx: FieldCtx, m: int, c) -> "MPoly":
        c = ctx(c)
        return cls._raw(ctx, m, {(0,) * m: c} if c else {})

    @classmethod
    def var(cls, ctx: FieldCtx, m: int, i: int) -> "MPoly":
        """The variable t_{i+1} (0-based ``i``)."""
        exp = tuple(int(j == i) for j in range(m))
        return cls._raw(ctx, m, {exp: ctx.one})

    @classmethod
    def monomial(cls, ctx: FieldCtx, exp: Exp, c=1) -> "MPoly":
        c = ctx(c)
        return cls._raw(ctx, len(exp), {tuple(exp): c} if c else {})

    # -- predicates ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_one(self) -> bool:
        zero_exp = (0,) * self.m
        return len(self.terms) == 1 and zero_exp in self.terms and self.terms[zero_exp].is_one()

    def const_value(self) -> FieldElem:
        return self.terms.get((0,) * self.m, self.ctx.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[Exp, FieldElem]:
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ctx is other.ctx and self.m == other.m and self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self == MPoly.const(self.ctx, self.m, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((e, c.coeffs) for e, c in self.terms.items()))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ctx is not self.ctx or other.m != self.m:
                raise FieldError("MPoly arity or context mismatch")
            return other
        if isinstance(other, (int, FieldElem)):
            return MPoly.const(self.ctx, self.m, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.terms:
            return self
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._raw(self.ctx, self.m, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.ctx, self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def scale(self, c: FieldElem) -> "MPoly":
        c = self.ctx(c)
        if not c:
            return MPoly.zero(self.ctx, self.m)
        return MPoly._raw(self.ctx, self.m, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return MPoly.zero(self.ctx, self.m)
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exp, FieldElem] = {}
        for e1, c1 in b.items():
            for e2, c2 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw(self.ctx, self.m, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.ctx, self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def qpower(self, q: int | None = None) -> "MPoly":
        """``self ** q`` for q a power of the characteristic.

        Computed as t_i -> t_i^q with coefficients raised to the q-th power
        (the identity on F_q itself).
        """
        q = self.ctx.q if q is None else q
        out = {}
        for e, c in self.terms.items():
            ne = tuple(x * q for x in e)
            if ne and max(ne) > MAX_EXPONENT:
                raise OverflowError("exponent overflow in q-power")
            out[ne] = c if q == self.ctx.q else c**q
        return MPoly._raw(self.ctx, self.m, out)

    def monomial_content(self) -> Exp:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * self.m
        exps = list(self.terms)
        return tuple(min(e[i] for e in exps) for i in range(self.m))

    def shift_down(self, exp: Exp) -> "MPoly":
        return MPoly._raw(
            self.ctx, self.m, {tuple(x - y for x, y in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def exact_div(self, other: "MPoly") -> "MPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None.

        Graded-lex division by a single polynomial: the remainder is zero
        exactly when the division is exact.
        """
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self
        lexp, lc = other.leading()
        inv = lc.inverse()
        if len(other.terms) == 1:
            out = {}
            for e, c in self.terms.items():
                d = tuple(x - y for x, y in zip(e, lexp))
                if min(d) < 0:
                    return None
                out[d] = c * inv
            return MPoly._raw(self.ctx, self.m, out)
        rem = dict(self.terms)
        quot: dict[Exp, FieldElem] = {}
        rest = [(e, c) for e, c in other.terms.items() if e != lexp]
        # bound: any exact quotient has degree deg(self) - deg(other)
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            d = tuple(x - y for x, y in zip(e, lexp))
            if min(d) < 0:
                return None
            k = c * inv
            quot[d] = k
            del rem[e]
            for oe, oc in rest:
                te = tuple(x + y for x, y in zip(oe, d))
                v = rem.get(te)
                nv = -(k * oc) if v is None else v - k * oc
                if nv:
                    rem[te] = nv
                elif v is not None:
                    del rem[te]
        return MPoly._raw(self.ctx, self.m, quot)

    # -- evaluation ------------------------------------------------------

    def eval(self, xi: Sequence[FieldElem]) -> FieldElem:
        """Value at ``xi``; coefficients are embedded into the field of xi."""
        if len(xi) != self.m:
            raise ValueError(f"expected {self.m} values, got {len(xi)}")
        if self.m == 0:
            return self.const_value()
        L = xi[0].ctx
        for x in xi:
            if x.ctx is not L:
                raise FieldError("evaluation point mixes fields")
        acc = L.zero
        powcache: list[dict[int, FieldElem]] = [{} for _ in range(self.m)]
        for e, c in self.terms.items():
            term = lift(c, L)
            for i, k in enumerate(e):
                if k:
                    pk = powcache[i].get(k)
                    if pk is None:
                        pk = xi[i] ** k
                        powcache[i][k] = pk
                    term = term * pk
            acc = acc + term
        return acc

    def substitute(self, values: Sequence["MPoly"]) -> "MPoly":
        out = MPoly.zero(self.ctx, values[0].m if values else 0)
        for e, c in self.terms.items():
            term = MPoly.const(self.ctx, out.m, c)
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            out = out + term
        return out

    # -- text ----------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exp, FieldElem]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_mpoly(self, names)

    def __str__(self) -> str:
        return format_mpoly(self)

    def __repr__(self) -> str:
        return f"MPoly({format_mpoly(self)})"


def default_names(m: int) -> list[str]:
    return [f"t{i + 1}" for i in range(m)]


def format_monomial(exp: Exp, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_mpoly(f: MPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text: graded-lex descending terms joined by `` + ``."""
    names = names or default_names(f.m)
    if not f.terms:
        return "0"
    out = []
    for exp, c in f.sorted_terms():
        mono = format_monomial(exp, names)
        if not mono:
            out.append(str(c))
        elif c.is_one():
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


# -- fractions ---------------------------------------------------------------


class RatFun:
    """A formal fraction ``num / den`` of MPolys."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, normalize: bool = True):
        if den is None:
            den = MPoly.const(num.ctx, num.m, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ctx is not den.ctx or num.m != den.m:
            raise FieldError("numerator and denominator disagree")
        self.num = num
        self.den = den
        if normalize:
            self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @property
    def m(self) -> int:
        return self.num.m

    @classmethod
    def const(cls, ctx: FieldCtx, m: int, c) -> "RatFun":
        return cls._raw(MPoly.const(ctx, m, c), MPoly.const(ctx, m, 1))

    @classmethod
    def var(cls, ctx: FieldCtx, m: int, i: int) -> "RatFun":
        return cls._raw(MPoly.var(ctx, m, i), MPoly.const(ctx, m, 1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, MPoly):
            return RatFun._raw(other, MPoly.const(other.ctx, other.m, 1))
        if isinstance(other, (int, FieldElem)):
            return RatFun.const(self.ctx, self.m, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            if self.den.is_one():
                return RatFun._raw(self.num + o.num, self.den)
            return RatFun(self.num + o.num, self.den)
        if o.den.is_one():
            return RatFun(self.num + o.num * self.den, self.den)
        if self.den.is_one():
            return RatFun(self.num * o.den + o.num, o.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den.is_one() and o.den.is_one():
            return RatFun._raw(self.num * o.num, self.den)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num**k, self.den**k)

    def qpower(self, q: int | None = None) -> "RatFun":
        return RatFun._raw(self.num.qpower(q), self.den.qpower(q))

    def equals(self, other) -> bool:
        o = self._coerce(other)
        return rf_equal(self, o)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return rf_equal(self, o)

    __hash__ = None

    def eval(self, xi: Sequence[FieldElem]) -> FieldElem:
        d = self.den.eval(xi)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.eval(xi) / d

    def format(self, names=None) -> str:
        if self.den.is_one():
            return format_mpoly(self.num, names)
        return f"({format_mpoly(self.num, names)})/({format_mpoly(self.den, names)})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFun({self.format()})"


def _normalize(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, MPoly.const(num.ctx, num.m, 1)
    # common monomial content
    cn, cd = num.monomial_content(), den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(cn, cd))
    if any(common):
        num, den = num.shift_down(common), den.shift_down(common)
    # leading coefficient of den becomes 1
    _, lc = den.leading()
    if not lc.is_one():
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    if den.is_one():
        return num, den
    q = num.exact_div(den)
    if q is not None:
        return q, MPoly.const(num.ctx, num.m, 1)
    return num, den


def rf_normalize(r: RatFun) -> RatFun:
    return RatFun(r.num, r.den)


def rf_equal(r: RatFun, s: RatFun) -> bool:
    return r.num * s.den == s.num * r.den


# -- matrices ------------------------------------------------------------------


class MatRF:
    """Square matrix of :class:`RatFun` entries, row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("MatRF must be square")
        ref = None
        for r in rows:
            for x in r:
                if isinstance(x, (RatFun, MPoly)):
                    ref = x
                    break
            if ref is not None:
                break
        if ref is None:
            raise ValueError("cannot infer context of a matrix without polynomial entries")
        ctx, m = ref.ctx, ref.m
        out = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, RatFun):
                    pass
                elif isinstance(x, MPoly):
                    x = RatFun._raw(x, MPoly.const(ctx, m, 1))
                else:
                    x = RatFun.const(ctx, m, x)
                if x.ctx is not ctx or x.m != m:
                    raise FieldError("matrix entries disagree on field or arity")
                row.append(x)
            out.append(row)
        self.rows = out

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def ctx(self) -> FieldCtx:
        return self.rows[0][0].ctx

    @property
    def m(self) -> int:
        return self.rows[0][0].m

    @classmethod
    def identity(cls, ctx: FieldCtx, m: int, n: int) -> "MatRF":
        return cls([[RatFun.const(ctx, m, int(i == j)) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> list[RatFun]:
        return [r[j] for r in self.rows]

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[RatFun]]) -> "MatRF":
        return cls([list(r) for r in zip(*cols)])

    def __mul__(self, other: "MatRF") -> "MatRF":
        return mat_mul(self, other)

    def qtwist(self, q: int | None = None) -> "MatRF":
        return mat_qtwist(self, q)

    @property
    def T(self) -> "MatRF":
        return mat_transpose(self)

    def det(self) -> RatFun:
        return mat_det(self)

    def inv(self) -> "MatRF":
        return mat_inv(self)

    def is_polynomial(self) -> bool:
        return all(x.is_poly() for r in self.rows for x in r)

    def equals(self, other: "MatRF") -> bool:
        if self.n != other.n:
            return False
        return all(rf_equal(a, b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatRF):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def eval(self, xi: Sequence[FieldElem]) -> list[list[FieldElem]]:
        return [[x.eval(xi) for x in r] for r in self.rows]

    def format(self, names=None) -> list[list[str]]:
        return [[x.format(names) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        return f"MatRF({self.format()})"


def mat_mul(a: MatRF, b: MatRF) -> MatRF:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    n = a.n
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                x, y = a.rows[i][k], b.rows[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else RatFun.const(a.ctx, a.m, 0))
        out.append(row)
    return MatRF(out)


def mat_qtwist(a: MatRF, q: int | None = None) -> MatRF:
    return MatRF([[x.qpower(q) for x in r] for r in a.rows])


def mat_transpose(a: MatRF) -> MatRF:
    return MatRF([list(r) for r in zip(*a.rows)])


def _poly_det(rows: list[list[MPoly]]) -> MPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n <= 4:
        acc = None
        for j in range(n):
            if rows[0][j].is_zero():
                continue
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            t = rows[0][j] * _poly_det(minor)
            if j % 2:
                t = -t
            acc = t if acc is None else acc + t
        return acc if acc is not None else MPoly.zero(rows[0][0].ctx, rows[0][0].m)
    return _bareiss(rows)


def _bareiss(rows: list[list[MPoly]]) -> MPoly:
    """Fraction-free elimination; every division is exact."""
    m = [list(r) for r in rows]
    n = len(m)
    ctx, nv = m[0][0].ctx, m[0][0].m
    sign = 1
    prev = MPoly.const(ctx, nv, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MPoly.zero(ctx, nv)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = num.exact_div(prev)
                if q is None:
                    raise ArithmeticError("inexact Bareiss step")
                m[i][j] = q
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def mat_det(a: MatRF) -> RatFun:
    """Determinant: cofactor expansion up to n=4, Bareiss beyond."""
    if a.is_polynomial():
        return RatFun._raw(_poly_det([[x.num for x in r] for r in a.rows]), MPoly.const(a.ctx, a.m, 1))
    # clear each row's denominators, then divide out again
    scale = MPoly.const(a.ctx, a.m, 1)
    prows = []
    for r in a.rows:
        lcm = MPoly.const(a.ctx, a.m, 1)
        seen = []
        for x in r:
            if not x.den.is_one() and not any(x.den == s for s in seen):
                seen.append(x.den)
                lcm = lcm * x.den
        scale = scale * lcm
        prows.append([(x.num * lcm).exact_div(x.den) for x in r])
    return RatFun(_poly_det(prows), scale)


def adjugate(a: MatRF) -> MatRF:
    n = a.n
    if n == 1:
        return MatRF.identity(a.ctx, a.m, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = MatRF([r[:j] + r[j + 1 :] for k, r in enumerate(a.rows) if k != i])
            c = mat_det(minor)
            out[j][i] = -c if (i + j) % 2 else c
    return MatRF(out)


def mat_inv(a: MatRF) -> MatRF:
    d = mat_det(a)
    if d.is_zero():
        raise ZeroDivisionError("singular matrix")
    inv_d = d.inverse()
    adj = adjugate(a)
    return MatRF([[x * inv_d for x in r] for r in adj.rows])


# -- polynomials in Y over the fraction field ------------------------------


class YPoly:
    """Univariate polynomial in Y with :class:`RatFun` coefficients."""

    __slots__ = ("coeffs", "ctx", "m")

    def __init__(self, coeffs: Sequence, ctx: FieldCtx | None = None, m: int | None = None):
        cs = list(coeffs)
        ref = next((c for c in cs if isinstance(c, (RatFun, MPoly))), None)
        if ref is not None:
            ctx, m = ref.ctx, ref.m
        if ctx is None or m is None:
            raise ValueError("YPoly needs a context")
        out = []
        for c in cs:
            if isinstance(c, MPoly):
                c = RatFun._raw(c, MPoly.const(ctx, m, 1))
            elif not isinstance(c, RatFun):
                c = RatFun.const(ctx, m, c)
            out.append(c)
        while out and out[-1].is_zero():
            out.pop()
        self.coeffs = out
        self.ctx = ctx
        self.m = m

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "YPoly") -> "YPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        zero = RatFun.const(self.ctx, self.m, 0)
        return YPoly(
            [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)],
            self.ctx,
            self.m,
        )

    def __neg__(self) -> "YPoly":
        return YPoly([-c for c in self.coeffs], self.ctx, self.m)

    def __sub__(self, other: "YPoly") -> "YPoly":
        return self + (-other)

    def __mul__(self, other: "YPoly") -> "YPoly":
        if self.is_zero() or other.is_zero():
            return YPoly([], self.ctx, self.m)
        out = [RatFun.const(self.ctx, self.m, 0) for _ in range(self.degree + other.degree + 1)]
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return YPoly(out, self.ctx, self.m)

    def equals(self, other: "YPoly") -> bool:
        if self.degree != other.degree:
            return False
        return all(rf_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def divrem(self, g: "YPoly") -> tuple["YPoly", "YPoly"]:
        return ypoly_divrem(self, g)

    def eval_coeffs(self, xi: Sequence[FieldElem]) -> list[FieldElem]:
        return [c.eval(xi) for c in self.coeffs]

    def format(self, names=None, var: str = "Y") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            text = c.format(names)
            if not mono:
                parts.append(text)
            elif c.is_one():
                parts.append(mono)
            elif c.is_poly() and len(c.num.terms) == 1 and " " not in text:
                parts.append(f"{text}*{mono}")
            else:
                parts.append(f"({text})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"YPoly({self.format()})"


def ypoly_divrem(f: YPoly, g: YPoly) -> tuple[YPoly, YPoly]:
    """Long division over the fraction field: f = q*g + r, deg r < deg g."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f.coeffs)
    dg = g.degree
    lead_inv = g.coeffs[-1].inverse()
    zero = RatFun.const(f.ctx, f.m, 0)
    q = [zero] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        coef = r[-1] if lead_inv.is_one() else r[-1] * lead_inv
        shift = len(r) - 1 - dg
        q[shift] = coef
        for i, y in enumerate(g.coeffs[:-1]):
            if not y.is_zero():
                r[shift + i] = r[shift + i] - coef * y
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    return YPoly(q, f.ctx, f.m), YPoly(r, f.ctx, f.m)


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[\d,\s]*\])|([A-Za-z][A-Za-z_]*_?\d*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        num, elem, ident, op = mt.groups()
        if num is not None:
            tokens.append(("num", num))
        elif elem is not None:
            tokens.append(("elem", elem))
        elif ident is not None:
            tokens.append(("id", ident.replace("_", "")))
        elif op is not None:
            tokens.append(("op", "^" if op == "**" else op))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def parse_mpoly(text: str, ctx: FieldCtx, names: Sequence[str]) -> MPoly:
    """Parse ``+ - * ^ ( )`` expressions with integer or ``[c0,..]``
    coefficients over the named variables.  Juxtaposition multiplies."""
    tokens = _tokenize(text)
    m = len(names)
    index = {name: i for i, name in enumerate(names)}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of polynomial text")
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> MPoly:
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term() -> MPoly:
        acc = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * factor()
            elif kind in ("num", "id", "elem") or (kind == "op" and val == "("):
                acc = acc * factor()
            else:
                return acc

    def factor() -> MPoly:
        kind, val = peek()
        if kind == "op" and val == "-":
            take()
            return -factor()
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, v = take()
            if k != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(v)
        return base

    def atom() -> MPoly:
        kind, val = take()
        if kind == "num":
            return MPoly.const(ctx, m, int(val))
        if kind == "elem":
            return MPoly.const(ctx, m, ctx.parse(val))
        if kind == "id":
            if val not in index:
                raise ValueError(f"unknown variable {val!r}")
            return MPoly.var(ctx, m, index[val])
        if kind == "op" and val == "(":
            inner = expr()
            k, v = take()
            if v != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        raise ValueError(f"unexpected token {val!r}")

    if not tokens:
        raise ValueError("empty polynomial text")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in polynomial: {tokens[pos][1]!r}")
    return result


def parse_ratfun(text: str, ctx: FieldCtx, m: int) -> RatFun:
    """Parse ``num`` or ``(num)/(den)``."""
    s = text.strip()
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            names = default_names(m)
            return RatFun(parse_mpoly(s[:i], ctx, names), parse_mpoly(s[i + 1 :], ctx, names))
    return RatFun(parse_mpoly(s, ctx, default_names(m)))


def parse_ypoly(text: str, ctx: FieldCtx, m: int, var: str = "Y") -> YPoly:
    """Parse a polynomial in Y whose coefficients are polynomials in t1..tm."""
    names = default_names(m) + [var]
    big = parse_mpoly(text, ctx, names)
    by_deg: dict[int, dict] = {}
    for exp, c in big.terms.items():
        by_deg.setdefault(exp[-1], {})[exp[:-1]] = c
    deg = max(by_deg, default=-1)
    coeffs = [MPoly._raw(ctx, m, dict(by_deg.get(k, {}))) for k in range(deg + 1)]
    return YPoly(coeffs, ctx, m)


def mpoly_from_terms(ctx: FieldCtx, m: int, items: Iterable[tuple[Exp, object]]) -> MPoly:
    out = MPoly.zero(ctx, m)
    for e, c in items:
        out = out + MPoly.monomial(ctx, tuple(e), c)
    return out
