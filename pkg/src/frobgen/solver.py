"""Concrete Frobenius systems over finite fields.

Given B over L = F_{q^k}, the map X -> B X^(q) is F_q-linear on L_j^n for
every extension L_j / L of degree j.  Its fixed space is computed by plain
linear algebra over F_q; the smallest j where the fixed space has dimension
n is the splitting degree, and U^-1 U^(|L|) is the Frobenius element.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from . import linalg
from .algebra import Algebra, AlgebraSpec, build_algebra, generic_matrix, membership, unit_group
from .finitefield import CapExceeded, FieldCtx, FieldElem, lift, new_context
from .frobenius import (
    AdditivePolynomial,
    ConcreteAdditivePolynomial,
    FrobeniusModule,
    SpecializationError,
    companion_form,
    cyclic_vector,
    emit_additive_poly,
    specialize_module,
    specialize_polynomial,
)
from .upoly import UPoly, degree_pattern, is_squarefree, squarefree_decomposition

Matrix = list[list[FieldElem]]

#: Default extension-degree cap when no algebra is known.
DEGREE_CAP_LIMIT = 10**4


class SplittingError(RuntimeError):
    """Dimension n never reached within the extension-degree cap."""


class MembershipError(AssertionError):
    """A Frobenius element fell outside the algebra."""


# -- helpers ----------------------------------------------------------------------


def base_field(p: int, q: int) -> FieldCtx:
    e = round(math.log(q, p))
    if p**e != q:
        raise ValueError(f"{q} is not a power of {p}")
    return new_context(p, e)


def extension(L: FieldCtx, j: int) -> FieldCtx:
    """L_j: the degree-j extension of L (default modulus)."""
    return L if j == 1 else new_context(L.p, L.e * j)


def gl_exponent(n: int, q: int, limit: int = DEGREE_CAP_LIMIT) -> int:
    """Exponent of GL_n(F_q), truncated at ``limit``."""
    p = min(f for f in range(2, q + 1) if q % f == 0)
    pa = 1
    while pa < n:
        pa *= p
    out = pa
    for i in range(1, n + 1):
        out = math.lcm(out, q**i - 1)
        if out > limit:
            return limit
    return min(out, limit)


class _Coords:
    """F_q-coordinates of L_j elements in the basis 1, x, ..., x^(D-1),
    x the generator of L_j."""

    def __init__(self, K: FieldCtx, F: FieldCtx):
        if K.e % F.e:
            raise ValueError("not an extension of the base field")
        self.K, self.F = K, F
        self.D = K.e // F.e
        self.powers = [K.gen**i for i in range(self.D)] if K.e > 1 else [K.one]
        if F.e == 1:
            self.tinv = None
            return
        Fp = new_context(K.p)
        gam = lift(F.gen, K)
        cols = []
        for a in range(F.e):
            ga = gam**a
            for x in self.powers:
                cols.append(list((ga * x).coeffs))
        T = [[Fp(cols[c][r]) for c in range(K.e)] for r in range(K.e)]
        self.tinv = [[x.coeffs[0] for x in row] for row in linalg.inverse(T)]

    def coords(self, y: FieldElem) -> list[FieldElem]:
        F = self.F
        if self.tinv is None:
            return [F(c) for c in y.coeffs]
        p = self.K.p
        z = [sum(t * c for t, c in zip(row, y.coeffs)) % p for row in self.tinv]
        # z is ordered (a, i) with a the F_q-generator power, i the x power
        return [F([z[a * self.D + i] for a in range(F.e)]) for i in range(self.D)]

    def element(self, cs: Sequence[FieldElem]) -> FieldElem:
        K = self.K
        acc = K.zero
        for c, x in zip(cs, self.powers):
            if c:
                acc = acc + lift(c, K) * x
        return acc


def fq_kernel(
    fn: Callable[[list[FieldElem]], list[FieldElem]], nvars: int, K: FieldCtx, F: FieldCtx
) -> list[list[FieldElem]]:
    """Basis over F_q of the kernel of an F_q-linear map K^nvars -> K^nout."""
    co = _Coords(K, F)
    cols = []
    for k in range(nvars):
        for x in co.powers:
            vec = [K.zero] * nvars
            vec[k] = x
            image = fn(vec)
            cols.append([c for y in image for c in co.coords(y)])
    mat = [list(r) for r in zip(*cols)]
    kern = linalg.nullspace(mat, len(cols))
    D = co.D
    return [[co.element(v[k * D : (k + 1) * D]) for k in range(nvars)] for v in kern]


# -- solution spaces ----------------------------------------------------------------


def _check_invertible(B: Matrix) -> None:
    if not linalg.det(B):
        raise ZeroDivisionError("B is singular")


def solution_space(B: Matrix, q: int, j: int) -> list[list[FieldElem]]:
    """F_q-basis of {X in L_j^n : B X^(q) = X}."""
    _check_invertible(B)
    L = B[0][0].ctx
    K = extension(L, j)
    F = base_field(L.p, q)
    BK = [[lift(x, K) for x in row] for row in B]

    def phi_minus_id(X):
        return [a - b for a, b in zip(linalg.matvec(BK, [x**q for x in X]), X)]

    return fq_kernel(phi_minus_id, len(B), K, F)


def algebra_solutions(B: Matrix, q: int, j: int, alg: Algebra) -> list[list[FieldElem]]:
    """F_q-basis of coordinate vectors u over L_j with U = sum u_l a_l and
    B U^(q) = U."""
    L = B[0][0].ctx
    K = extension(L, j)
    F = base_field(L.p, q)
    BK = [[lift(x, K) for x in row] for row in B]
    basis_K = [[[lift(x, K) for x in row] for row in a] for a in alg.basis]
    Bb = [linalg.matmul(BK, a) for a in basis_K]
    n = alg.n

    def fn(u):
        out = [[K.zero] * n for _ in range(n)]
        for ul, bl, al in zip(u, Bb, basis_K):
            if not ul:
                continue
            uq = ul**q
            for r in range(n):
                for s in range(n):
                    out[r][s] = out[r][s] + uq * bl[r][s] - ul * al[r][s]
        return [x for row in out for x in row]

    return fq_kernel(fn, alg.m, K, F)


@dataclass
class SolutionReport:
    field: FieldCtx
    q: int
    dims: dict[int, int]
    splitting_degree: int
    U: Matrix
    g: Matrix
    g_order: int
    coords: list[FieldElem] | None = None

    def to_dict(self) -> dict:
        out = {
            "field": [self.field.p, self.field.e],
            "q": self.q,
            "dimensions": {str(j): d for j, d in self.dims.items()},
            "splitting_degree": self.splitting_degree,
            "g": [[str(x) for x in row] for row in self.g],
            "g_order": self.g_order,
        }
        if self.coords is not None:
            out["membership"] = [str(c) for c in self.coords]
        return out


def _first_invertible(sols, alg: Algebra, K: FieldCtx, F: FieldCtx) -> Matrix | None:
    """First invertible element of the F_q-span of ``sols`` (as algebra
    coordinates), scanning F_q-combinations in enumeration order."""
    elems = [lift(x, K) for x in F.elements()]
    for combo in itertools.product(elems, repeat=len(sols)):
        if not any(combo):
            continue
        u = [K.zero] * alg.m
        for c, s in zip(combo, sols):
            if c:
                u = [a + c * b for a, b in zip(u, s)]
        U = alg.element(u)
        if linalg.det(U):
            return U
    return None


def splitting_report(
    B: Matrix, q: int, alg: Algebra | None = None, cap: int | None = None
) -> SolutionReport:
    """Increase j until the solution space has dimension n; build U, g.

    With an algebra, U is taken inside the algebra over L_j, so that
    g = U^-1 U^(|L|) is a member of the algebra.
    """
    _check_invertible(B)
    L = B[0][0].ctx
    n = len(B)
    F = base_field(L.p, q)
    if cap is None:
        cap = unit_exponent(alg) if alg is not None else gl_exponent(n, q)
    dims: dict[int, int] = {}
    for j in range(1, cap + 1):
        sols = solution_space(B, q, j)
        dims[j] = len(sols)
        if len(sols) == n:
            break
    else:
        raise SplittingError(f"dimension {n} not reached for j <= {cap}")
    K = extension(L, j)
    if alg is not None:
        asols = algebra_solutions(B, q, j, alg)
        U = _first_invertible(asols, alg, K, F)
        if U is None:
            raise MembershipError("no invertible solution inside the algebra")
    else:
        U = [list(r) for r in zip(*sols)]
    g = linalg.matmul(linalg.inverse(U), linalg.twist(U, L.q))
    for row in g:
        for x in row:
            if x**q != x:
                raise ArithmeticError("Frobenius element has an entry outside F_q")
    gF = [[_descend_fq(x, F) for x in row] for row in g]
    order = linalg.mat_order(gF)
    report = SolutionReport(L, q, dims, j, U, gF, order)
    if alg is not None:
        report.coords = frobenius_membership(report, alg)
    return report


@lru_cache(maxsize=None)
def _fq_table(K: FieldCtx, F: FieldCtx) -> dict:
    return {lift(x, K).coeffs: x for x in F.elements()}


def _descend_fq(x: FieldElem, F: FieldCtx) -> FieldElem:
    if x.ctx is F:
        return x
    return _fq_table(x.ctx, F)[x.coeffs]


def unit_exponent(alg: Algebra) -> int:
    """Exponent of the unit group (cached on the algebra); falls back to the
    GL_n bound when the algebra is too large to enumerate."""
    ex = getattr(alg, "_unit_exponent", None)
    if ex is None:
        try:
            ex = unit_group(alg).exponent
        except CapExceeded:
            ex = gl_exponent(alg.n, alg.q)
        alg._unit_exponent = ex
    return ex


def frobenius_membership(report: SolutionReport, alg: Algebra) -> list[FieldElem]:
    if not linalg.det(report.g):
        raise MembershipError("Frobenius element is singular")
    coords = membership(report.g, alg)
    if coords is None:
        raise MembershipError("Frobenius element lies outside the algebra span")
    return coords


def check_lang_steinberg(B: Matrix, q: int, U: Matrix) -> bool:
    """B U^(q) = U over the field of U."""
    K = U[0][0].ctx
    BK = [[lift(x, K) for x in row] for row in B]
    return linalg.matmul(BK, linalg.twist(U, q)) == U and bool(linalg.det(U))


# -- additive polynomials --------------------------------------------------------------


@dataclass
class AdditiveSplitting:
    splitting_degree: int
    dims: dict[int, int]

    def to_dict(self) -> dict:
        return {"splitting_degree": self.splitting_degree, "dimensions": {str(j): d for j, d in self.dims.items()}}


def additive_root_space(f: ConcreteAdditivePolynomial, j: int) -> list[FieldElem]:
    L = f.ctx
    K = extension(L, j)
    F = base_field(L.p, f.q)
    return [v[0] for v in fq_kernel(lambda Y: [f(Y[0])], 1, K, F)]


def additive_splitting_degree(f: ConcreteAdditivePolynomial, cap: int | None = None) -> AdditiveSplitting:
    if not f.coeffs[0]:
        raise ValueError("a_0 = 0: inseparable additive polynomial")
    if cap is None:
        cap = gl_exponent(f.n, f.q)
    dims = {}
    for j in range(1, cap + 1):
        dims[j] = len(additive_root_space(f, j))
        if dims[j] == f.n:
            return AdditiveSplitting(j, dims)
    raise SplittingError(f"root space dimension {f.n} not reached for j <= {cap}")


@dataclass
class DDFResult:
    squarefree: bool
    pattern: list[int] | None = None
    multiplicities: list[tuple[int, list[int]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        if self.squarefree:
            return {"squarefree": True, "pattern": self.pattern}
        return {"squarefree": False, "multiplicities": [[m, pat] for m, pat in self.multiplicities]}


def ddf_pattern(h: UPoly) -> DDFResult:
    """Irreducible-factor degree pattern of h; non-squarefree inputs get the
    pattern of each squarefree part, keyed by multiplicity."""
    if not h:
        raise ValueError("zero polynomial")
    if is_squarefree(h):
        return DDFResult(True, degree_pattern(h))
    parts = [(m, degree_pattern(a)) for m, a in squarefree_decomposition(h)]
    return DDFResult(False, None, parts)


# -- sampling ----------------------------------------------------------------------------

LCG_A = 6364136223846793005
LCG_C = 1442695040888963407
MASK64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class LCG:
    """x <- a x + c mod 2^64; only the high 32 bits of each state are used."""

    def __init__(self, seed: int, stream: int = 0):
        self.state = _mix64((seed & MASK64) ^ _mix64(stream))

    def next32(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) & MASK64
        return self.state >> 32

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("empty range")
        words = 1
        while (1 << (32 * words)) < n:
            words += 1
        span = 1 << (32 * words)
        limit = span - span % n
        while True:
            x = 0
            for _ in range(words):
                x = (x << 32) | self.next32()
            if x < limit:
                return x % n


@dataclass
class Pipeline:
    """The symbolic data needed to specialize: algebra, A(t), f(Y;t)."""

    alg: Algebra
    module: FrobeniusModule
    poly: AdditivePolynomial


def build_pipeline(alg: Algebra, cyclic=None) -> Pipeline:
    A, d = generic_matrix(alg)
    fm = FrobeniusModule(A, alg.q)
    v, N = cyclic_vector(fm, cyclic)
    cf = companion_form(fm, v, N)
    return Pipeline(alg, fm, emit_additive_poly(cf, alg.q, d))


@dataclass
class Sample:
    index: int
    field: tuple[int, int]
    xi: list[str]
    splitting_degree: int
    g_order: int
    coords: list[str]
    poly_degree: int | None = None
    skipped: int = 0

    def to_dict(self) -> dict:
        out = {
            "index": self.index,
            "field": list(self.field),
            "xi": self.xi,
            "splitting_degree": self.splitting_degree,
            "g_order": self.g_order,
            "membership": self.coords,
            "skipped": self.skipped,
        }
        if self.poly_degree is not None:
            out["poly_splitting_degree"] = self.poly_degree
        return out


@dataclass
class SampleReport:
    seed: int
    samples: list[Sample]
    unit_orders: list[int] | None = None

    @property
    def skipped(self) -> int:
        return sum(s.skipped for s in self.samples)

    def order_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.samples:
            out[s.g_order] = out.get(s.g_order, 0) + 1
        return dict(sorted(out.items()))

    @property
    def observed(self) -> set[int]:
        return {s.g_order for s in self.samples}

    def to_dict(self) -> dict:
        out = {
            "seed": self.seed,
            "count": len(self.samples),
            "skipped": self.skipped,
            "order_counts": {str(k): v for k, v in self.order_counts().items()},
            "samples": [s.to_dict() for s in self.samples],
        }
        if self.unit_orders is not None:
            out["unit_group_orders"] = self.unit_orders
            out["missing_orders"] = sorted(set(self.unit_orders) - self.observed)
        return out


MAX_DRAWS = 10_000


def draw_sample(pipe: Pipeline, L: FieldCtx, seed: int, index: int, check_poly: bool = False) -> Sample:
    """Redraw xi in L^m until d(xi) and det N(xi) are nonzero."""
    rng = LCG(seed, index)
    m = pipe.alg.m
    for attempt in range(MAX_DRAWS):
        xi = [L.from_index(rng.below(L.q)) for _ in range(m)]
        try:
            fxi = specialize_polynomial(pipe.poly, xi)
            conc = specialize_module(pipe.module, xi)
        except SpecializationError:
            continue
        rep = splitting_report(conc.matrix, pipe.alg.q, pipe.alg)
        pdeg = additive_splitting_degree(fxi).splitting_degree if check_poly else None
        return Sample(
            index,
            (L.p, L.e),
            [str(x) for x in xi],
            rep.splitting_degree,
            rep.g_order,
            [str(c) for c in rep.coords],
            pdeg,
            attempt,
        )
    raise RuntimeError(f"no admissible point after {MAX_DRAWS} draws")


_WORKER: dict = {}


def _worker_run(args):
    spec, cyclic, fields, seed, indices, check_poly = args
    key = (id(spec), repr(cyclic))
    pipe = _WORKER.get("pipe") if _WORKER.get("key") == key else None
    if pipe is None:
        pipe = build_pipeline(build_algebra(spec), cyclic)
        _WORKER.update(key=key, pipe=pipe)
    return [
        draw_sample(pipe, new_context(*fields[i % len(fields)]), seed, i, check_poly) for i in indices
    ]


def sample_frobenius(
    alg: Algebra | AlgebraSpec,
    fields: Sequence[tuple[int, int]],
    count: int,
    seed: int = 0,
    jobs: int = 1,
    cyclic=None,
    check_poly: bool = False,
) -> SampleReport:
    """Draw ``count`` admissible specializations; sample i lives in
    fields[i % len(fields)] and uses its own LCG stream, so the report does
    not depend on ``jobs``."""
    if isinstance(alg, AlgebraSpec):
        alg = build_algebra(alg)
    for p, e in fields:
        if p != alg.ctx.p or e % alg.ctx.e:
            raise ValueError(f"F_{p}^{e} does not contain the base field")
    try:
        unit_orders = sorted(set(unit_group(alg).orders))
    except CapExceeded:
        unit_orders = None
    fields = [tuple(f) for f in fields]
    if jobs <= 1 or count < 2:
        pipe = build_pipeline(alg, cyclic)
        samples = [
            draw_sample(pipe, new_context(*fields[i % len(fields)]), seed, i, check_poly) for i in range(count)
        ]
    else:
        chunks = [list(range(w, count, jobs)) for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_worker_run, [(alg.spec, cyclic, fields, seed, c, check_poly) for c in chunks])
            samples = sorted((s for part in parts for s in part), key=lambda s: s.index)
    return SampleReport(seed, samples, unit_orders)
