"""Dense univariate polynomials over a finite field.

Coefficients are stored constant term first; the zero polynomial is the
empty list.  Used for root finding (field embeddings), squarefree and
distinct-degree factorization.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .finitefield import FieldCtx, FieldElem, FieldError


class UPoly:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable = ()):
        self.ctx = ctx
        c = [ctx(x) if not isinstance(x, FieldElem) else x for x in coeffs]
        for x in c:
            if x.ctx is not ctx:
                raise FieldError("coefficient context mismatch")
        while c and not c[-1]:
            c.pop()
        self.c = c

    @classmethod
    def _raw(cls, ctx, c):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        while c and not c[-1]:
            c.pop()
        obj.c = c
        return obj

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UPoly":
        return cls._raw(ctx, [ctx.zero, ctx.one])

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int, coeff=None) -> "UPoly":
        coeff = ctx.one if coeff is None else ctx(coeff)
        return cls._raw(ctx, [ctx.zero] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self) -> FieldElem:
        return self.c[-1] if self.c else self.ctx.zero

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.ctx is other.ctx and self.c == other.c

    def __hash__(self):
        return hash(tuple(x.coeffs for x in self.c))

    def __add__(self, other: "UPoly") -> "UPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return UPoly._raw(self.ctx, out)

    def __neg__(self) -> "UPoly":
        return UPoly._raw(self.ctx, [-x for x in self.c])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (FieldElem, int)):
            s = self.ctx(other)
            return UPoly._raw(self.ctx, [x * s for x in self.c])
        if not self.c or not other.c:
            return UPoly._raw(self.ctx, [])
        out = [self.ctx.zero] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] = out[i + j] + x * y
        return UPoly._raw(self.ctx, out)

    __rmul__ = __mul__

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dg = other.degree
        inv = other.c[-1].inverse()
        q = [self.ctx.zero] * max(len(r) - dg, 0)
        while len(r) - 1 >= dg and r:
            coef = r[-1] * inv
            shift = len(r) - 1 - dg
            q[shift] = coef
            for i, y in enumerate(other.c):
                r[shift + i] = r[shift + i] - coef * y
            r.pop()
            while r and not r[-1]:
                r.pop()
        return UPoly._raw(self.ctx, q), UPoly._raw(self.ctx, r)

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        return self * self.c[-1].inverse()

    def derivative(self) -> "UPoly":
        return UPoly._raw(self.ctx, [x * i for i, x in enumerate(self.c)][1:])

    def __call__(self, y: FieldElem) -> FieldElem:
        if y.ctx is not self.ctx:
            raise FieldError("evaluate at an element of the coefficient field")
        acc = self.ctx.zero
        for x in reversed(self.c):
            acc = acc * y + x
        return acc

    def powmod(self, k: int, mod: "UPoly") -> "UPoly":
        result = UPoly._raw(self.ctx, [self.ctx.one]) % mod
        base = self % mod
        while k:
            if k & 1:
                result = (result * base) % mod
            k >>= 1
            if k:
                base = (base * base) % mod
        return result

    def __repr__(self) -> str:
        return f"UPoly({format_upoly(self)})"


def gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a % b
    return a.monic()


def format_upoly(f: UPoly, var: str = "Y") -> str:
    """Human text, highest degree first, e.g. ``Y^9 + 2*Y^3 + Y``."""
    if not f.c:
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f.c[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(str(c))
        elif c.is_one():
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def _frobenius_split_root(f: UPoly) -> list[FieldElem]:
    """All roots of ``f`` (squarefree, split into linear factors) by
    equal-degree splitting."""
    ctx = f.ctx
    f = f.monic()
    if f.degree == 0:
        return []
    if f.degree == 1:
        return [-f.c[0]]
    X = UPoly.x(ctx)
    for delta in _split_seeds(ctx):
        if ctx.p == 2:
            # absolute trace of delta*Y splits f
            t = UPoly._raw(ctx, [ctx.zero, delta]) % f
            acc = t
            for _ in range(ctx.e - 1):
                t = (t * t) % f
                acc = acc + t
            h = gcd(f, acc)
        else:
            base = X + UPoly._raw(ctx, [delta])
            h = gcd(f, base.powmod((ctx.q - 1) // 2, f) - UPoly._raw(ctx, [ctx.one]))
        if 0 < h.degree < f.degree:
            return _frobenius_split_root(h) + _frobenius_split_root(f // h)
    raise RuntimeError("equal-degree splitting failed")  # pragma: no cover


def _split_seeds(ctx: FieldCtx):
    # deterministic sequence of splitting parameters: powers of the
    # generator, then a walk through the element indices
    seen = set()
    g = ctx.gen if ctx.e > 1 else ctx(1)
    cur = ctx.one
    for _ in range(4 * ctx.e + 8):
        if cur.coeffs not in seen:
            seen.add(cur.coeffs)
            yield cur
        cur = cur * g + ctx.one
    step = max(ctx.q // 97, 1)
    for idx in range(1, ctx.q, step):
        yield ctx.from_index(idx)


def roots(f: UPoly) -> list[FieldElem]:
    """Distinct roots of ``f`` in its coefficient field."""
    if not f.c:
        raise ValueError("zero polynomial has every element as a root")
    ctx = f.ctx
    X = UPoly.x(ctx)
    lin = gcd(f, X.powmod(ctx.q, f) - X)
    found = _frobenius_split_root(lin)
    return sorted(found, key=lambda r: r.index)


def roots_of_fp_poly(coeffs: Sequence[int], sup: FieldCtx) -> list[FieldElem]:
    """Roots in ``sup`` of a polynomial with F_p coefficients."""
    return roots(UPoly(sup, [sup(int(c)) for c in coeffs]))


def is_squarefree(f: UPoly) -> bool:
    return gcd(f, f.derivative()).degree == 0


def _pth_root(f: UPoly) -> UPoly:
    """Given f(Y) = g(Y^p), return g with coefficients replaced by p-th roots."""
    ctx = f.ctx
    k = ctx.q // ctx.p
    return UPoly._raw(ctx, [f.c[i] ** k for i in range(0, len(f.c), ctx.p)])


def squarefree_decomposition(f: UPoly) -> list[tuple[int, UPoly]]:
    """Pairs (multiplicity, squarefree monic factor) with f = lc * prod a_i^i."""
    if not f.c:
        raise ValueError("zero polynomial")
    f = f.monic()
    out: dict[int, UPoly] = {}

    def rec(f: UPoly, mult: int) -> None:
        if f.degree == 0:
            return
        d = f.derivative()
        if not d:
            rec(_pth_root(f), mult * f.ctx.p)
            return
        c = gcd(f, d)
        w = f // c
        i = 1
        while w.degree > 0:
            y = gcd(w, c)
            fac = w // y
            if fac.degree > 0:
                key = i * mult
                out[key] = out[key] * fac if key in out else fac
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            rec(_pth_root(c), mult * f.ctx.p)

    rec(f, 1)
    return sorted((m, g.monic()) for m, g in out.items()) if out else []


def distinct_degree(f: UPoly) -> list[tuple[int, UPoly]]:
    """Distinct-degree factorization of a squarefree polynomial.

    Returns (i, product of all monic irreducible degree-i factors) pairs.
    """
    ctx = f.ctx
    f = f.monic()
    X = UPoly.x(ctx)
    out = []
    h = X % f if f.degree > 0 else X
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = h.powmod(ctx.q, f)
        g = gcd(f, h - X)
        if g.degree > 0:
            out.append((i, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def degree_pattern(f: UPoly) -> list[int]:
    """Sorted multiset of irreducible factor degrees of a squarefree f."""
    pattern = []
    for i, g in distinct_degree(f):
        pattern.extend([i] * (g.degree // i))
    return sorted(pattern)
