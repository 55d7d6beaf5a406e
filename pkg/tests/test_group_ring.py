import pytest
from hypothesis import assume, given, strategies as st

from brumer_stark.errors import NotDivisible, PrecisionExhausted, RingMismatch, TrivialConjugation
from brumer_stark.group_ring import (ZZ, GroupRingElement, MinusElement, char_image, divide_by_2t,
                                     galois_orbits, minus_project, multiply, padic_ring, sharp)
from brumer_stark.groups import FiniteAbelianGroup

Z2 = FiniteAbelianGroup([2], (1,))
Z3 = FiniteAbelianGroup([3])
GROUPS = [Z2, FiniteAbelianGroup([4], (2,)), FiniteAbelianGroup([2, 2], (0, 1)),
          FiniteAbelianGroup([2, 4], (1, 2)), FiniteAbelianGroup([6], (3,))]


def el(G, terms, ring=ZZ):
    return GroupRingElement.from_dict(G, terms, ring)


def elements(G):
    return st.lists(st.integers(-6, 6), min_size=G.order, max_size=G.order).map(
        lambda cs: GroupRingElement(G, cs))


group_and_pair = st.sampled_from(GROUPS).flatmap(lambda G: st.tuples(elements(G), elements(G)))


def test_multiply_examples():
    one, c = (0,), (1,)
    assert multiply(el(Z2, {one: 1, c: 1}), el(Z2, {one: 1, c: -1})).is_zero()
    a = el(Z2, {one: 3, c: -2})
    assert multiply(GroupRingElement.one(Z2), a) == a
    g, g2 = (1,), (2,)
    assert multiply(el(Z3, {(0,): 1, g: 1}), el(Z3, {(0,): 1, g2: 1})) == el(Z3, {(0,): 2, g: 1, g2: 1})


def test_multiply_ring_mismatch():
    with pytest.raises(RingMismatch):
        multiply(GroupRingElement.one(Z2), GroupRingElement.one(Z2, padic_ring(2)))


def test_sharp_examples():
    assert sharp(el(Z2, {(0,): 1, (1,): -1})) == el(Z2, {(0,): 1, (1,): -1})
    assert sharp(el(Z3, {(1,): 1})) == el(Z3, {(2,): 1})
    assert sharp(el(Z3, {(0,): 2, (1,): 3, (2,): 5})) == el(Z3, {(0,): 2, (1,): 5, (2,): 3})


def test_minus_project_examples():
    assert minus_project(el(Z2, {(0,): 1, (1,): 1})).is_zero()
    assert minus_project(el(Z2, {(0,): 1, (1,): -1})) == MinusElement.scalar(Z2, 2)
    with pytest.raises(TrivialConjugation):
        minus_project(GroupRingElement.one(Z3))


def test_char_image_examples():
    odd = Z2.odd_characters()
    zero = char_image(GroupRingElement.zero(Z2), odd, p=3)
    assert all(v.is_zero() for v in zero.values) and not zero.nonzerodivisor
    for p in (2, 3):
        img = char_image(el(Z2, {(0,): 1, (1,): -1}), odd, p=p)
        assert img.values[0] == 2 and img.nonzerodivisor
    assert char_image(el(Z2, {(0,): 1, (1,): 1}), odd, p=3).values[0].is_zero()


def test_char_image_precision_exhausted():
    with pytest.raises(PrecisionExhausted):
        char_image(el(Z2, {(0,): 8}), Z2.odd_characters(), p=2, precision=3)


def test_divide_by_2t_examples():
    ring = padic_ring(2)
    x = divide_by_2t(el(Z2, {(0,): 1, (1,): -1}, ring), 1)
    assert x == MinusElement.one(Z2, x.ring)
    assert divide_by_2t(GroupRingElement.zero(Z2, ring), 3).is_zero()
    with pytest.raises(NotDivisible):
        divide_by_2t(GroupRingElement.one(Z2, ring), 1)


@given(group_and_pair)
def test_multiply_commutative_associative(pair):
    a, b = pair
    assert a * b == b * a
    assert (a * b) * a == a * (b * a)


@given(group_and_pair)
def test_sharp_is_involutive_antihomomorphism(pair):
    a, b = pair
    assert sharp(sharp(a)) == a
    assert sharp(a * b) == sharp(a) * sharp(b)


@given(group_and_pair)
def test_sharp_evaluates_at_inverse_character(pair):
    a, _ = pair
    for chi in a.group.characters:
        assert sharp(a).evaluate(chi) == a.evaluate(chi.inverse())


@given(group_and_pair)
def test_minus_kills_one_plus_c(pair):
    a, _ = pair
    G = a.group
    assert minus_project(el(G, {G.identity: 1, G.c: 1}) * a).is_zero()
    assert minus_project(a.minus().lift()) == a.minus()


@pytest.mark.parametrize("G", GROUPS)
def test_minus_rank(G):
    assert len(G.minus_reps) == G.order // 2


@given(group_and_pair, st.sampled_from([3, 5, 7]))
def test_char_image_is_homomorphism(pair, p):
    a, b = pair
    assume(a.group.exponent % p)
    chars = a.group.characters
    try:
        lhs = char_image(a * b, chars, p=p, precision=20)
        rhs = char_image(a, chars, p=p, precision=20) * char_image(b, chars, p=p, precision=20)
    except PrecisionExhausted:
        return
    assert lhs == rhs
    assert char_image(a + b, chars, p=p, precision=20) == \
        char_image(a, chars, p=p, precision=20) + char_image(b, chars, p=p, precision=20)


@pytest.mark.parametrize("G", GROUPS)
@pytest.mark.parametrize("p", [3, 5, 7])
def test_product_decomposition_over_orbits(G, p):
    if G.exponent % p == 0:
        pytest.skip("p divides the exponent: ramified embedding")
    a = el(G, {g: i + 1 for i, g in enumerate(G.elements)})
    odd = [chi for chi in G.characters if chi.is_odd]
    whole = char_image(a, odd, p=p, precision=20)
    by_orbit = {}
    for orbit in galois_orbits(odd, p):
        img = char_image(a, orbit, p=p, precision=20)
        by_orbit.update(zip(orbit, img.values))
    assert dict(zip(whole.chars, whole.values)) == by_orbit
