from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brumer_stark.cyclotomic import Cyclotomic
from brumer_stark.errors import EmptyGroup, NonInvolution, RamifiedEmbedding
from brumer_stark.groups import FiniteAbelianGroup, build_group, list_characters
from brumer_stark.intlinalg import hnf, smith_form
from brumer_stark.padic import embed_padic, padic_valuation, vp

SMALL_GROUPS = [([2], (1,)), ([4], (2,)), ([2, 2], (1, 0)), ([2, 4], (1, 2)), ([6], (3,)), ([3], (0,)),
                ([2, 2, 2], (1, 1, 0))]


def test_build_group_examples():
    G = build_group([2], (1,))
    assert G.order == 2 and G.c == (1,) and G.identity == (0,)
    T = build_group([1], (0,))
    assert T.order == 1 and T.c == T.identity
    H = build_group([2, 4], (1, 2))
    assert H.order == 8 and H.element_order(H.c) == 2


def test_build_group_errors():
    with pytest.raises(NonInvolution):
        build_group([4], (1,))
    with pytest.raises(EmptyGroup):
        build_group([], ())


def test_character_examples():
    chars = list_characters(build_group([2], (1,)))
    assert len(chars) == 2
    assert [chi.is_odd for chi in chars] == [False, True]
    assert not any(chi.is_odd for chi in list_characters(build_group([3], (0,))))
    assert sum(chi.is_odd for chi in list_characters(build_group([2, 2], (1, 0)))) == 2


def test_characters_separate_elements():
    G = build_group([2, 4], (1, 2))
    for g in G.elements:
        if g != G.identity:
            assert any(chi.exp_at(g) for chi in G.characters)


@pytest.mark.parametrize("inv,c", SMALL_GROUPS)
def test_orthogonality(inv, c):
    G = FiniteAbelianGroup(inv, c)
    for g in G.elements:
        total = Cyclotomic.from_rational(G.exponent, 0)
        for chi in G.characters:
            total = total + chi(g)
        expect = G.order if g == G.identity else 0
        assert total == Cyclotomic.from_rational(G.exponent, expect)


@pytest.mark.parametrize("inv,c", SMALL_GROUPS)
def test_odd_count(inv, c):
    G = FiniteAbelianGroup(inv, c)
    n_odd = len(G.odd_characters())
    assert n_odd == (G.order // 2 if G.c != G.identity else 0)


def test_embed_examples():
    assert embed_padic(Cyclotomic.from_rational(3, 1), 5, 10) == 1
    z = embed_padic(Cyclotomic.zeta(3), 7, 8)
    assert z.ctx.degree == 1
    assert z ** 3 == 1 and z != 1
    with pytest.raises(RamifiedEmbedding):
        embed_padic(Cyclotomic.zeta(4), 2, 8)


def test_embed_root_order_preserved():
    for m, p in [(5, 2), (7, 3), (12, 5), (8, 3)]:
        z = embed_padic(Cyclotomic.zeta(m), p, 20)
        assert z ** m == 1
        assert all(z ** d != 1 for d in range(1, m) if m % d == 0)


cyc_coeffs = st.lists(st.integers(-20, 20), min_size=12, max_size=12)


@given(cyc_coeffs, cyc_coeffs, st.sampled_from([(12, 5), (12, 7), (5, 11), (7, 2)]))
def test_embed_is_ring_homomorphism(a, b, mp):
    m, p = mp
    x = Cyclotomic.from_bins(m, a[:m])
    y = Cyclotomic.from_bins(m, b[:m])
    ex, ey = embed_padic(x, p, 16), embed_padic(y, p, 16)
    assert embed_padic(x * y, p, 16) == ex * ey
    assert embed_padic(x + y, p, 16) == ex + ey


def test_padic_valuation_rational():
    assert vp(48, 2) == 4
    assert padic_valuation(Fraction(9, 2), 3) == 2
    assert padic_valuation(0, 3) is None


def test_cyclotomic_norm_and_conj():
    z = Cyclotomic.zeta(3)
    one_minus = Cyclotomic.from_rational(3, 1) - z
    assert one_minus.norm() == Cyclotomic.from_rational(3, 3)
    assert (z * z.conj()) == Cyclotomic.from_rational(3, 1)


def test_smith_form_and_hnf():
    diag, V, Vinv = smith_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert diag == [2, 6, 12]
    H, pivots, _ = hnf([[2, 4], [3, 6]], 2)
    assert H == [[1, 2]] and pivots == [0]
