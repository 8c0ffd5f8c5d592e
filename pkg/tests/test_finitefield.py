import itertools

import pytest
from hypothesis import given, settings, strategies as st

from frobgen.finitefield import (
    CapExceeded,
    FieldError,
    arith,
    default_modulus,
    descend,
    embed,
    embedding_root,
    enumerate_field,
    in_subfield,
    is_irreducible_fp,
    is_prime,
    lift,
    new_context,
    power,
)

from conftest import brute_irreducible


FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]


def test_default_modulus_f9():
    assert new_context(3, 2).modulus == (1, 0, 1)


def test_prime_field_modulus():
    F = new_context(2)
    assert F.modulus == (0, 1)
    assert F.q == 2


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        new_context(4)
    with pytest.raises(FieldError):
        new_context(3, 0)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        new_context(3, 2, [2, 0, 1])  # Y^2 - 1


def test_contexts_interned():
    assert new_context(3, 2) is new_context(3, 2, [1, 0, 1])
    assert new_context(3, 2) is not new_context(3, 2, [2, 2, 1])


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_default_modulus_is_first_irreducible(p, e):
    # scan c0 fastest; first monic irreducible by trial division
    for idx in range(p**e):
        low = [(idx // p**i) % p for i in range(e)]
        if brute_irreducible(low + [1], p):
            assert default_modulus(p, e) == tuple(low + [1])
            return
    pytest.fail("no irreducible found")


@pytest.mark.parametrize("p,deg", [(2, 4), (3, 3), (5, 2)])
def test_rabin_agrees_with_trial_division(p, deg):
    for low in itertools.product(range(p), repeat=deg):
        poly = list(low) + [1]
        assert is_irreducible_fp(poly, p) == brute_irreducible(poly, p), poly


def test_spec_arith_examples(F3, F9):
    assert F3(2) * F3(2) == F3(1)
    assert F3(1) / F3(2) == F3(2)
    w = F9.gen
    assert w * w == F9(2)
    assert power(w, 3) == F9([0, 2])
    assert arith(F3(2), F3(2), "mul") == F3(1)
    with pytest.raises(ZeroDivisionError):
        arith(F3(1), F3(0), "div")


def test_context_mismatch(F3, F9):
    with pytest.raises(FieldError):
        F3(1) + F9(1)


def test_enumeration_order_and_cap(F9):
    elems = list(enumerate_field(F9))
    assert len(elems) == 9 and len(set(elems)) == 9
    assert [x.index for x in elems] == list(range(9))
    assert elems[3] == F9([0, 1])
    with pytest.raises(CapExceeded):
        list(enumerate_field(F9, cap=8))


def test_parse_and_text(F9):
    x = F9.parse("[1,2]")
    assert str(x) == "[1,2]"
    assert F9.parse(str(x)) == x
    assert F9.parse("5") == F9(2)
    with pytest.raises(FieldError):
        F9.parse("[1,2")


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(p, e):
    F = new_context(p, e)
    for x in F.elements():
        if x:
            assert x ** (F.q - 1) == F.one
            assert x * x.inverse() == F.one


@st.composite
def field_triples(draw):
    p, e = draw(st.sampled_from(FIELDS))
    F = new_context(p, e)
    pick = lambda: F.from_index(draw(st.integers(0, F.q - 1)))  # noqa: E731
    return F, pick(), pick(), pick()


@given(field_triples())
@settings(max_examples=200, deadline=None)
def test_field_axioms(t):
    F, a, b, c = t
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + (-a) == F.zero
    assert (a + b) ** F.p == a**F.p + b**F.p
    if b:
        assert (a / b) * b == a


def _brute_roots(sub, sup):
    return sorted(
        (x for x in sup.elements() if sum((c * x**i for i, c in enumerate(sub.modulus)), sup.zero) == sup.zero),
        key=lambda x: x.index,
    )


@pytest.mark.parametrize("sub,sup", [((3, 2), (3, 4)), ((2, 2), (2, 6)), ((2, 3), (2, 6)), ((2, 2), (2, 4))])
def test_embedding_root_is_minimal_index_root(sub, sup):
    S, T = new_context(*sub), new_context(*sup)
    assert embedding_root(S, T) == _brute_roots(S, T)[0]


@pytest.mark.parametrize("sub,sup", [((3, 2), (3, 4)), ((2, 2), (2, 6)), ((5, 1), (5, 3))])
def test_embedding_is_ring_homomorphism(sub, sup):
    S, T = new_context(*sub), new_context(*sup)
    elems = list(S.elements())
    for a in elems:
        for b in elems[:6]:
            assert embed(a * b, S, T) == embed(a, S, T) * embed(b, S, T)
            assert embed(a + b, S, T) == embed(a, S, T) + embed(b, S, T)
        assert descend(lift(a, T), S) == a
        assert in_subfield(lift(a, T), S.q)


def test_descend_outside_image(F9):
    F81 = new_context(3, 4)
    x = F81.gen
    assert not in_subfield(x, 9)
    assert descend(x, F9) is None


def test_large_field_arithmetic():
    K = new_context(3, 24)
    x = K.gen + 1
    assert x ** (K.q - 1) == K.one
    F27 = new_context(3, 3)
    r = embedding_root(F27, K)
    assert sum((c * r**i for i, c in enumerate(F27.modulus)), K.zero) == K.zero


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
