import itertools

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from frobgen import linalg
from frobgen.algebra import generic_matrix
from frobgen.finitefield import lift, new_context
from frobgen.frobenius import (
    ConcreteAdditivePolynomial,
    FrobeniusModule,
    SpecializationError,
    integrality_certificate,
    specialize,
)
from frobgen.solver import (
    LCG,
    additive_root_space,
    additive_splitting_degree,
    build_pipeline,
    check_lang_steinberg,
    ddf_pattern,
    extension,
    gl_exponent,
    sample_frobenius,
    solution_space,
    splitting_report,
)
from frobgen.upoly import UPoly

from conftest import mat


def brute_solutions(B, q, j):
    L = B[0][0].ctx
    K = extension(L, j)
    BK = [[lift(x, K) for x in r] for r in B]
    n = len(B)
    out = []
    for X in itertools.product(list(K.elements()), repeat=n):
        if linalg.matvec(BK, [x**q for x in X]) == list(X):
            out.append(list(X))
    return out


def brute_splitting_degree(B, q, limit=8):
    n = len(B)
    for j in range(1, limit + 1):
        if len(brute_solutions(B, q, j)) == q**n:
            return j
    return None


@st.composite
def invertible(draw, fields=((2, 1), (3, 1), (2, 2)), nmax=2):
    p, e = draw(st.sampled_from(fields))
    L = new_context(p, e)
    n = draw(st.integers(1, nmax))
    B = [[L.from_index(draw(st.integers(0, L.q - 1))) for _ in range(n)] for _ in range(n)]
    assume(linalg.det(B))
    return B


def test_spec_solution_examples(F3):
    assert [[str(x) for x in v] for v in solution_space([[F3(1)]], 3, 1)] == [["1"]]
    assert solution_space([[F3(-1)]], 3, 1) == []
    sols = solution_space([[F3(-1)]], 3, 2)
    assert len(sols) == 1 and sols[0][0] ** 2 == new_context(3, 2)(-1)
    rep = splitting_report([[F3(-1)]], 3)
    assert rep.splitting_degree == 2 and rep.g == [[F3(-1)]] and rep.g_order == 2


def test_singular_rejected(F3):
    with pytest.raises(ZeroDivisionError):
        solution_space(mat(F3, [[1, 1], [1, 1]]), 3, 1)


@given(invertible(), st.integers(1, 2))
@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_solution_space_matches_exhaustion(B, j):
    q = B[0][0].ctx.p  # linearize over the prime field
    basis = solution_space(B, q, j)
    brute = brute_solutions(B, q, j)
    assert len(brute) == q ** len(basis)
    keys = {tuple(x.coeffs for x in v) for v in brute}
    for v in basis:
        assert tuple(x.coeffs for x in v) in keys


@given(invertible(fields=((2, 1), (3, 1), (2, 2), (5, 1))))
@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_splitting_report_invariants(B):
    L = B[0][0].ctx
    q = L.p
    rep = splitting_report(B, q)
    s = rep.splitting_degree
    assert rep.dims[s] == len(B)
    assert all(d < len(B) for j, d in rep.dims.items() if j < s)
    # monotone along divisibility
    for j in rep.dims:
        for k in rep.dims:
            if k % j == 0:
                assert rep.dims[j] <= rep.dims[k]
    assert check_lang_steinberg(B, q, rep.U)
    assert all(x.ctx.q == q for r in rep.g for x in r)
    assert rep.g_order == s


@given(invertible(fields=((2, 1), (3, 1))))
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_splitting_degree_matches_exhaustion(B):
    q = B[0][0].ctx.p
    want = brute_splitting_degree(B, q, limit=4 if q == 3 else 6)
    if want is not None:
        assert splitting_report(B, q).splitting_degree == want


def test_c8_membership_all_points(c8):
    F3 = c8.ctx
    A, _ = generic_matrix(c8)
    fm = FrobeniusModule(A, 3)
    seen = 0
    for xi in itertools.product(list(F3.elements()), repeat=2):
        try:
            conc = specialize(fm, list(xi), F3)
        except SpecializationError:
            continue
        rep = splitting_report(conc.matrix, 3, c8)
        assert rep.coords is not None and len(rep.coords) == 2
        assert rep.g_order == rep.splitting_degree and 8 % rep.g_order == 0
        seen += 1
    assert seen == 8


def test_a4_membership_f4_points(a4):
    pipe = build_pipeline(a4, [1, 0, 1])
    F4 = new_context(2, 2)
    count = 0
    for idx in range(0, 4**5, 37):
        xi = [F4.from_index((idx // 4**k) % 4) for k in range(5)]
        try:
            conc = specialize(pipe.module, xi)
        except SpecializationError:
            continue
        rep = splitting_report(conc.matrix, 2, a4)
        assert len(rep.coords) == 5 and rep.g_order in (1, 2, 3)
        count += 1
    assert count > 10


def brute_additive_degree(f, limit):
    for j in range(1, limit + 1):
        K = extension(f.ctx, j)
        if sum(1 for y in K.elements() if not f(y)) == f.q**f.n:
            return j


def test_additive_examples(F3):
    f = ConcreteAdditivePolynomial(3, 1, [F3(1)])  # Y^3 - Y
    res = additive_splitting_degree(f)
    assert res.splitting_degree == 1 and res.dims == {1: 1}
    g = ConcreteAdditivePolynomial(3, 2, [F3(-1), F3(0)])  # Y^9 + Y
    assert additive_splitting_degree(g).splitting_degree == brute_additive_degree(g, 4) == 4
    with pytest.raises(ValueError):
        additive_splitting_degree(ConcreteAdditivePolynomial(3, 2, [F3(0), F3(1)]))


@given(st.integers(1, 2), st.integers(0, 8), st.integers(1, 8))
@settings(max_examples=30, deadline=None)
def test_additive_root_space_is_root_set(j, a1, a0):
    F3 = new_context(3)
    f = ConcreteAdditivePolynomial(3, 2, [F3(a0 % 3 or 1), F3(a1)])
    K = extension(F3, j)
    brute = sum(1 for y in K.elements() if not f(y))
    assert brute == 3 ** len(additive_root_space(f, j))


def test_system_and_polynomial_degrees_agree(c8):
    pipe = build_pipeline(c8, [1, 0])
    F9 = new_context(3, 2)
    for idx in range(0, 81, 7):
        xi = [F9.from_index(idx % 9), F9.from_index(idx // 9)]
        try:
            fx = specialize(pipe.poly, xi)
            conc = specialize(pipe.module, xi)
        except SpecializationError:
            continue
        assert additive_splitting_degree(fx).splitting_degree == splitting_report(conc.matrix, 3).splitting_degree


@given(invertible(fields=((3, 1), (2, 2)), nmax=3))
@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_certificate_annihilates_solutions(B):
    L = B[0][0].ctx
    q = L.p
    cert = integrality_certificate(FrobeniusModule(B, q))
    rep = splitting_report(B, q)
    assert all(not cert(x) for r in rep.U for x in r)


def test_ddf_reports_multiplicities():
    F2 = new_context(2)
    h = UPoly(F2, [0, 1, 1]) * UPoly(F2, [0, 1, 1])  # (Y^2+Y)^2
    res = ddf_pattern(h)
    assert not res.squarefree and res.multiplicities == [(2, [1, 1])]
    assert ddf_pattern(UPoly(F2, [1, 1, 1, 0, 1])).pattern == [1, 3]
    with pytest.raises(ValueError):
        ddf_pattern(UPoly(F2, []))


def test_gl_exponent():
    assert gl_exponent(2, 3) == 24
    assert gl_exponent(3, 2) == 84
    assert gl_exponent(1, 5) == 4
    assert gl_exponent(6, 7) == 10**4


def test_lcg_is_reproducible():
    a, b = LCG(42, 3), LCG(42, 3)
    assert [a.next32() for _ in range(5)] == [b.next32() for _ in range(5)]
    assert [LCG(42, 4).next32() for _ in range(2)] != [LCG(42, 3).next32() for _ in range(2)]
    r = LCG(1)
    counts = [0] * 3
    for _ in range(3000):
        counts[r.below(3)] += 1
    assert min(counts) > 900
    assert r.below(10**12) < 10**12


def test_sampling_is_deterministic_and_parallel_safe(c8):
    kw = dict(fields=[(3, 1), (3, 2)], count=6, seed=11, cyclic=[1, 0])
    one = sample_frobenius(c8, **kw)
    assert one.to_dict() == sample_frobenius(c8, **kw).to_dict()
    assert one.to_dict() == sample_frobenius(c8, jobs=2, **kw).to_dict()
    assert one.observed <= {1, 2, 4, 8}


def test_trivial_algebra_sampling():
    from frobgen.algebra import AlgebraSpec, close_basis

    alg = close_basis(AlgebraSpec(2, 1, 1, []))  # F_2, unit group {1}
    rep = sample_frobenius(alg, [(2, 1), (2, 2)], 8, seed=5)
    assert rep.observed == {1}
