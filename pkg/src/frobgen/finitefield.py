"""Exact arithmetic in finite fields F_{p^e}.

A field is fixed by a prime ``p``, a degree ``e`` and a monic irreducible
modulus over F_p.  Elements are little-endian coefficient tuples with respect
to the power basis of the modulus.  The default modulus is the first
irreducible polynomial in the scan order used by :func:`enumerate_field`
(coefficient tuples read as base-``p`` numbers, ``c0`` least significant).
"""

from __future__ import annotations

import itertools
import threading
from functools import lru_cache
from typing import Iterator, Sequence

#: Fields larger than this refuse to be enumerated element by element.
DEFAULT_ENUM_CAP = 2**32


class FieldError(ValueError):
    """Invalid field construction or incompatible field operation."""


class CapExceeded(FieldError):
    """A desk-scale size bound was exceeded."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as int lists (constant term first) ---------


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _fp_trim(list(a))
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _fp_trim(a)
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    return _fp_mod(r, m, p)


def _fp_powmod(a: list[int], k: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while k:
        if k & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        k >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def is_irreducible_fp(poly: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p.

    ``poly`` is a coefficient list, constant term first.
    """
    f = _fp_trim([c % p for c in poly])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^n) == x mod f
    xp = x
    powers = {}
    for i in range(1, n + 1):
        xp = _fp_powmod(xp, p, f, p)
        powers[i] = xp
    if _fp_trim([(a - b) % p for a, b in itertools.zip_longest(powers[n], x, fillvalue=0)]):
        return False
    for r in prime_factors(n):
        h = powers[n // r]
        diff = _fp_trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        g = _fp_gcd(f, diff, p)
        if len(g) > 1:
            return False
    return True


def _digits(index: int, p: int, e: int) -> tuple[int, ...]:
    out = []
    for _ in range(e):
        index, d = divmod(index, p)
        out.append(d)
    return tuple(out)


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible degree-``e`` polynomial in scan order."""
    for idx in range(p**e):
        low = _digits(idx, p, e)
        cand = low + (1,)
        if is_irreducible_fp(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


# -- contexts and elements --------------------------------------------------


class FieldCtx:
    """The field F_{p^e} = F_p[w]/(modulus).

    Construct through :func:`new_context`, which interns contexts so that
    equal ``(p, e, modulus)`` triples give the same object.
    """

    __slots__ = ("p", "e", "modulus", "q", "_red", "_zero", "_one", "__weakref__")

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.modulus = modulus
        self.q = p**e
        # w^(e+i) as a length-e vector, for reduction of products
        red = []
        cur = [(-c) % p for c in modulus[:e]]
        for _ in range(max(e - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(cur[i] - top * modulus[i]) % p for i in range(e)]
        red.append(tuple(cur))
        self._red = tuple(red)
        self._zero = FieldElem(self, (0,) * e)
        self._one = FieldElem(self, (1,) + (0,) * (e - 1))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (new_context, (self.p, self.e, self.modulus))

    @property
    def zero(self) -> "FieldElem":
        return self._zero

    @property
    def one(self) -> "FieldElem":
        return self._one

    @property
    def gen(self) -> "FieldElem":
        """The class of ``w``; for prime fields the root of the modulus."""
        if self.e == 1:
            return self((-self.modulus[0]) % self.p)
        return FieldElem(self, (0, 1) + (0,) * (self.e - 2))

    def __call__(self, value) -> "FieldElem":
        """Coerce an int, a coefficient sequence or an element of this field."""
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise FieldError(f"element of {value.ctx} is not in {self}")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.e - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.e:
            if any(coeffs[self.e:]):
                raise FieldError(f"too many coefficients for {self}")
            coeffs = coeffs[: self.e]
        coeffs += [0] * (self.e - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def from_index(self, index: int) -> "FieldElem":
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} out of range for {self}")
        return FieldElem(self, _digits(index, self.p, self.e))

    def parse(self, text) -> "FieldElem":
        """Parse the text form: a decimal integer, or ``[c0,c1,...]``."""
        if isinstance(text, (int, list, tuple)):
            return self(text)
        s = str(text).strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise FieldError(f"bad field element text {text!r}")
            body = s[1:-1].strip()
            parts = [int(x) for x in body.split(",")] if body else []
            return self(parts)
        try:
            return self(int(s))
        except ValueError:
            raise FieldError(f"bad field element text {text!r}") from None

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator["FieldElem"]:
        return enumerate_field(self, cap)

    # raw coefficient arithmetic ------------------------------------------

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        res = prod[:e]
        for k in range(e, 2 * e - 1):
            c = prod[k] % p
            if c:
                row = self._red[k - e]
                for i in range(e):
                    res[i] += c * row[i]
        return tuple(x % p for x in res)


class FieldElem:
    """An element of a :class:`FieldCtx`; immutable and hashable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _other(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((x + y) % p for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((x - y) % p for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise ZeroDivisionError("division by zero in finite field")
        if self.ctx.e == 1:
            return FieldElem(self.ctx, (pow(self.coeffs[0], self.ctx.p - 2, self.ctx.p),))
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> "FieldElem":
        if k < 0:
            return self.inverse() ** (-k)
        ctx = self.ctx
        if ctx.e == 1:
            return FieldElem(ctx, (pow(self.coeffs[0], k, ctx.p),))
        result = ctx.one.coeffs
        base = self.coeffs
        while k:
            if k & 1:
                result = ctx._mul(result, base)
            k >>= 1
            if k:
                base = ctx._mul(base, base)
        return FieldElem(ctx, result)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.ctx(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    @property
    def index(self) -> int:
        """Position in :func:`enumerate_field` order."""
        p = self.ctx.p
        n = 0
        for c in reversed(self.coeffs):
            n = n * p + c
        return n

    def is_one(self) -> bool:
        return self.coeffs == self.ctx.one.coeffs

    def __str__(self) -> str:
        if self.ctx.e == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"FieldElem({self}, {self.ctx!r})"


_registry: dict[tuple, FieldCtx] = {}
_registry_lock = threading.Lock()


def new_context(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Return the (interned) context for F_{p^e}.

    Without a modulus the first irreducible in scan order is used.  A given
    modulus must be monic of degree ``e`` and irreducible over F_p.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not isinstance(e, int) or e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if modulus is None:
        mod = _default_modulus_cached(p, e)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != e + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}: {list(modulus)}")
        if not is_irreducible_fp(mod, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
    key = (p, e, mod)
    with _registry_lock:
        ctx = _registry.get(key)
        if ctx is None:
            ctx = FieldCtx(p, e, mod)
            _registry[key] = ctx
    return ctx


@lru_cache(maxsize=None)
def _default_modulus_cached(p: int, e: int) -> tuple[int, ...]:
    return default_modulus(p, e)


def prime_field(p: int) -> FieldCtx:
    return new_context(p, 1)


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Dispatch ``op`` in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def power(a: FieldElem, k: int) -> FieldElem:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    return a**k


def enumerate_field(ctx: FieldCtx, cap: int = DEFAULT_ENUM_CAP) -> Iterator[FieldElem]:
    """All q elements in scan order: 0, 1, ..., with c0 varying fastest."""
    if ctx.q > cap:
        raise CapExceeded(f"refusing to enumerate {ctx} (q={ctx.q} > cap {cap})")
    for idx in range(ctx.q):
        yield FieldElem(ctx, _digits(idx, ctx.p, ctx.e))


# -- embeddings between fields ---------------------------------------------

_embed_cache: dict[tuple[int, int], tuple[FieldElem, ...]] = {}
_embed_lock = threading.Lock()


def _check_tower(sub: FieldCtx, sup: FieldCtx) -> None:
    if sub.p != sup.p:
        raise FieldError(f"incompatible characteristics {sub.p} and {sup.p}")
    if sup.e % sub.e:
        raise FieldError(f"{sub} does not embed in {sup}: {sub.e} does not divide {sup.e}")


def embedding_root(sub: FieldCtx, sup: FieldCtx) -> FieldElem:
    """The image of ``sub.gen`` in ``sup``: the root of ``sub.modulus`` with
    the smallest enumeration index."""
    return _embedding_images(sub, sup)[1] if sub.e > 1 else sup(sub.gen.coeffs[0])


def _embedding_images(sub: FieldCtx, sup: FieldCtx) -> tuple[FieldElem, ...]:
    """Images of the power basis 1, w, ..., w^(e-1) of ``sub`` in ``sup``."""
    _check_tower(sub, sup)
    key = (id(sub), id(sup))
    cached = _embed_cache.get(key)
    if cached is not None:
        return cached
    if sub is sup:
        images = tuple(FieldElem(sup, tuple(int(i == j) for j in range(sup.e))) for i in range(sup.e))
    elif sub.e == 1:
        images = (sup.one,)
    else:
        from .upoly import roots_of_fp_poly

        roots = roots_of_fp_poly(sub.modulus, sup)
        if not roots:
            raise RuntimeError(f"no root of {sub.modulus} found in {sup}")
        r = min(roots, key=lambda x: x.index)
        imgs = [sup.one]
        for _ in range(sub.e - 1):
            imgs.append(imgs[-1] * r)
        images = tuple(imgs)
    with _embed_lock:
        _embed_cache.setdefault(key, images)
        return _embed_cache[key]


def embed(a: FieldElem, sub: FieldCtx | None, sup: FieldCtx) -> FieldElem:
    """Image of ``a`` under the fixed embedding ``sub -> sup``."""
    if sub is None:
        sub = a.ctx
    if a.ctx is not sub:
        raise FieldError(f"element of {a.ctx} passed as element of {sub}")
    if sub is sup:
        return a
    images = _embedding_images(sub, sup)
    if sub.e == 1:
        return sup(a.coeffs[0])
    p = sup.p
    acc = [0] * sup.e
    for c, img in zip(a.coeffs, images):
        if c:
            for i, x in enumerate(img.coeffs):
                acc[i] += c * x
    return FieldElem(sup, tuple(x % p for x in acc))


def lift(a: FieldElem, sup: FieldCtx) -> FieldElem:
    """Shorthand for ``embed(a, a.ctx, sup)``."""
    return embed(a, a.ctx, sup)


def descend(a: FieldElem, sub: FieldCtx) -> FieldElem | None:
    """Preimage of ``a`` under ``embed(., sub, a.ctx)``, or None if ``a`` is
    not in the image."""
    sup = a.ctx
    if sub is sup:
        return a
    _check_tower(sub, sup)
    if sub.e == 1:
        if any(a.coeffs[1:]):
            return None
        return sub(a.coeffs[0])
    from .linalg import solve

    fp = prime_field(sup.p)
    images = _embedding_images(sub, sup)
    mat = [[fp(images[j].coeffs[i]) for j in range(sub.e)] for i in range(sup.e)]
    rhs = [fp(c) for c in a.coeffs]
    sol = solve(mat, rhs)
    if sol is None:
        return None
    return sub([x.coeffs[0] for x in sol])


def in_subfield(a: FieldElem, q: int) -> bool:
    """True iff ``a`` is fixed by x -> x^q."""
    return a**q == a
