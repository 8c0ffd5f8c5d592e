from __future__ import annotations

import itertools

import pytest

from frobgen import linalg
from frobgen.algebra import AlgebraSpec, build_algebra
from frobgen.finitefield import new_context
from frobgen.serialize import data_path, load_algebra


def brute_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            div = list(low) + [1]
            rem = list(poly)
            for shift in range(len(rem) - len(div), -1, -1):
                c = rem[shift + d]
                if c:
                    for i, x in enumerate(div):
                        rem[shift + i] = (rem[shift + i] - c * x) % p
            if not any(rem[:d]):
                return False
    return True


def mat(ctx, rows):
    return [[ctx(x) for x in r] for r in rows]


@pytest.fixture(scope="session")
def F2():
    return new_context(2)


@pytest.fixture(scope="session")
def F3():
    return new_context(3)


@pytest.fixture(scope="session")
def F9():
    return new_context(3, 2)


@pytest.fixture(scope="session")
def c8():
    spec, _ = load_algebra(data_path("c8.alg"))
    return build_algebra(spec)


@pytest.fixture(scope="session")
def a4():
    spec, _ = load_algebra(data_path("a4.alg"))
    return build_algebra(spec)


@pytest.fixture(scope="session")
def p5():
    spec, _ = load_algebra(data_path("p5.alg"))
    return build_algebra(spec)


def regular_rep(p, eps):
    """Algebra with basis {I, W}, W = [[0, eps], [1, 0]] over F_p."""
    F = new_context(p)
    W = mat(F, [[0, eps], [1, 0]])
    return build_algebra(AlgebraSpec(p, 1, 2, [W], [linalg.identity(F, 2), W]))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
