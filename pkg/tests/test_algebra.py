import itertools

import pytest

from frobgen import linalg
from frobgen.algebra import (
    AlgebraError,
    AlgebraSpec,
    algebra_from_basis,
    build_algebra,
    close_basis,
    generic_matrix,
    group_fingerprint,
    membership,
    unit_group,
)
from frobgen.finitefield import CapExceeded, new_context
from frobgen.multipoly import parse_ratfun, rf_equal

from conftest import mat


def all_matrices(F, n):
    for flat in itertools.product(list(F.elements()), repeat=n * n):
        yield [list(flat[i * n : (i + 1) * n]) for i in range(n)]


def group_closure(gens):
    """The group generated by invertible gens, by breadth-first products."""
    F = gens[0][0][0].ctx
    n = len(gens[0])
    key = lambda a: tuple(x.coeffs for r in a for x in r)  # noqa: E731
    seen = {key(linalg.identity(F, n)): linalg.identity(F, n)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = linalg.matmul(a, g)
                if key(b) not in seen:
                    seen[key(b)] = b
                    nxt.append(b)
        frontier = nxt
    return list(seen.values())


def test_a4_closure_and_units(a4):
    F2 = a4.ctx
    gens = a4.spec.generators
    closed = close_basis(AlgebraSpec(2, 1, 3, gens))
    # oracle: the span of the generated group equals the algebra
    span_rank = linalg.rank([[x for r in g for x in r] for g in group_closure(gens)])
    assert closed.m == span_rank == 5
    # oracle: scan all 512 matrices for invertible members of the span
    units = [x for x in all_matrices(F2, 3) if linalg.det(x) and membership(x, a4) is not None]
    ug = unit_group(a4)
    assert ug.order == len(units) == 12
    assert ug.profile() == {1: 1, 2: 3, 3: 8}
    assert not ug.abelian
    assert group_fingerprint(ug).text() == "order=12 profile=1:1,2:3,3:8 abelian=false"


def test_c8_units(c8):
    ug = unit_group(c8)
    assert ug.order == 8 and ug.abelian
    assert ug.profile() == {1: 1, 2: 1, 4: 2, 8: 4}
    assert ug.exponent == 8


def test_trivial_and_regular_closure(F3):
    assert close_basis(AlgebraSpec(3, 1, 1, [mat(F3, [[1]])])).m == 1
    W = mat(F3, [[0, -1], [1, 0]])
    alg = close_basis(AlgebraSpec(3, 1, 2, [W]))
    assert alg.m == 2
    assert membership(linalg.matmul(W, W), alg) is not None


def test_closure_basis_depends_only_on_span(F2, a4):
    gens = a4.spec.generators
    one = close_basis(AlgebraSpec(2, 1, 3, gens))
    two = close_basis(AlgebraSpec(2, 1, 3, list(reversed(gens)) + [linalg.matmul(gens[0], gens[1])]))
    assert one.basis == two.basis


def test_identity_is_adjoined(F2):
    N = mat(F2, [[0, 1], [0, 0]])
    alg = close_basis(AlgebraSpec(2, 1, 2, [N]))
    assert alg.m == 2
    assert membership(linalg.identity(F2, 2), alg) is not None


def test_generic_matrix_c8(c8):
    A, d = generic_matrix(c8)
    ctx = c8.ctx
    want = [["t1", "-t2"], ["t2", "t1"]]
    for r in range(2):
        for s in range(2):
            assert rf_equal(A.rows[r][s], parse_ratfun(want[r][s], ctx, 2))
    assert rf_equal(d, parse_ratfun("t1^2+t2^2", ctx, 2))


def test_membership_outside(c8):
    F3 = c8.ctx
    assert membership(mat(F3, [[0, 0], [1, 0]]), c8) is None
    coords = membership(mat(F3, [[2, 1], [2, 2]]), c8)
    assert coords == [F3(2), F3(2)]


def test_membership_over_extension(c8):
    F9 = new_context(3, 2)
    w = F9.gen
    x = [[w, -F9.one], [F9.one, w]]
    assert membership(x, c8) == [w, F9.one]


def test_explicit_basis_validation(F3):
    I = linalg.identity(F3, 2)
    W = mat(F3, [[0, -1], [1, 0]])
    spec = AlgebraSpec(3, 1, 2, [W])
    with pytest.raises(AlgebraError):
        algebra_from_basis(spec, [I, I])
    with pytest.raises(AlgebraError):
        algebra_from_basis(spec, [W])
    E = mat(F3, [[1, 0], [0, 0]])
    with pytest.raises(AlgebraError):
        algebra_from_basis(AlgebraSpec(3, 1, 2, []), [I, mat(F3, [[0, 1], [0, 0]]), mat(F3, [[0, 0], [1, 0]])])
    with pytest.raises(AlgebraError):
        algebra_from_basis(spec, [I, E])
    assert algebra_from_basis(spec, [W, I]).basis[0] == W


def test_unit_cap(a4):
    with pytest.raises(CapExceeded):
        unit_group(a4, cap=16)


def test_bad_generator_shape(F3):
    with pytest.raises(AlgebraError):
        close_basis(AlgebraSpec(3, 1, 2, [mat(F3, [[1]])]))


def test_full_matrix_algebra_units(F2):
    E = lambda i, j: [[F2(int((r, c) == (i, j))) for c in range(2)] for r in range(2)]  # noqa: E731
    alg = build_algebra(AlgebraSpec(2, 1, 2, [E(0, 1), E(1, 0)]))
    assert alg.m == 4
    ug = unit_group(alg)
    assert ug.order == 6 and ug.profile() == {1: 1, 2: 3, 3: 2}
