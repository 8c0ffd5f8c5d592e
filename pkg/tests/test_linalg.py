import itertools

from hypothesis import given, settings, strategies as st

from frobgen import linalg
from frobgen.finitefield import new_context


def leibniz(a):
    n = len(a)
    ctx = a[0][0].ctx
    total = ctx.zero
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ctx(sign)
        for i in range(n):
            term = term * a[i][perm[i]]
        total = total + term
    return total


@st.composite
def square(draw, fields=((2, 1), (3, 1), (3, 2), (5, 1))):
    p, e = draw(st.sampled_from(fields))
    F = new_context(p, e)
    n = draw(st.integers(1, 4))
    return [[F.from_index(draw(st.integers(0, F.q - 1))) for _ in range(n)] for _ in range(n)]


@given(square())
@settings(max_examples=150, deadline=None)
def test_det_matches_leibniz(a):
    assert linalg.det(a) == leibniz(a)


@given(square())
@settings(max_examples=150, deadline=None)
def test_inverse_and_kernel(a):
    n = len(a)
    if linalg.det(a):
        assert linalg.is_identity(linalg.matmul(a, linalg.inverse(a)))
        assert linalg.nullspace(a) == []
    else:
        kern = linalg.nullspace(a)
        assert len(kern) == n - linalg.rank(a)
        for v in kern:
            assert all(not x for x in linalg.matvec(a, v))


@given(square())
@settings(max_examples=100, deadline=None)
def test_solve_consistent(a):
    F = a[0][0].ctx
    x = [F.one] * len(a)
    b = linalg.matvec(a, x)
    sol = linalg.solve(a, b)
    assert sol is not None and linalg.matvec(a, sol) == b


def test_mat_order():
    F = new_context(3)
    W = [[F(0), F(2)], [F(1), F(0)]]
    assert linalg.mat_order(W) == 4
