import random
from dataclasses import replace
from fractions import Fraction

import pytest

from brumer_stark.cyclotomic import Cyclotomic
from brumer_stark.dirichlet import DirichletGroup
from brumer_stark.errors import (AlreadyInSets, BadConductor, EvenCharacter, MissingRamified, NotDivisible,
                                 RamifiedShift, SetsOverlap)
from brumer_stark.group_ring import QQ, GroupRingElement, divide_by_2t, padic_ring, sharp
from brumer_stark.stickelberger import (assemble_theta, dirichlet_l_table, dirichlet_places, euler_shift,
                                        kubota_oracle_theta, l_value_bernoulli, shift_table, smooth_l_value,
                                        theta_for_conductor)


def odd_quadratic(f):
    dg = DirichletGroup(f)
    return dg, next(chi for chi in dg.characters() if chi.is_odd and chi.character.order == 2)


def q(x):
    return x.to_fraction()


def one_minus_c(G, ring=QQ):
    return GroupRingElement.from_dict(G, {G.identity: 1, G.c: -1}, ring)


def test_bernoulli_values():
    assert q(l_value_bernoulli(odd_quadratic(3)[1])) == Fraction(1, 3)
    assert q(l_value_bernoulli(odd_quadratic(4)[1])) == Fraction(1, 2)
    dg = DirichletGroup(3)
    trivial = next(chi for chi in dg.characters() if not chi.is_odd)
    with pytest.raises(EvenCharacter):
        l_value_bernoulli(trivial)


def test_bernoulli_against_direct_sum():
    # L(chi, 0) = -(1/f) sum chi(a) a for primitive chi, with chi read off the residue table
    for f in (5, 7, 8, 11, 12, 13):
        dg = DirichletGroup(f)
        for chi in dg.characters():
            if chi.is_odd and chi.conductor == f:
                total = Cyclotomic.from_rational(chi.m, 0)
                for a in range(1, f):
                    e = chi.value_exp(a)
                    if e is not None:
                        total = total + Cyclotomic.zeta(chi.m, e) * a
                assert l_value_bernoulli(chi) == total * Fraction(-1, f)


def test_smooth_l_value_examples():
    dg, chi = odd_quadratic(3)
    L = l_value_bernoulli(chi)
    S, T = dirichlet_places(dg, [3], [5])
    assert q(smooth_l_value(L, chi, S, T)) == 2
    assert smooth_l_value(L, chi, S, []) == L
    # 7 = 1 mod 3, so chi(7) = 1 and depleting at 7 kills the value
    S7, _ = dirichlet_places(dg, [3, 7], [])
    assert smooth_l_value(L, chi, S7, []).is_zero()


def test_smooth_l_value_errors():
    dg, chi = odd_quadratic(3)
    L = l_value_bernoulli(chi)
    S, _ = dirichlet_places(dg, [3, 5], [])
    with pytest.raises(SetsOverlap):
        smooth_l_value(L, chi, S, [dg.place(5)])
    with pytest.raises(MissingRamified):
        smooth_l_value(L, chi, [dg.archimedean()], [])


def test_assemble_f3_example():
    theta = theta_for_conductor(3, [3], [5])
    assert theta.element == one_minus_c(theta.group)
    assert theta.dr_condition and theta.integral
    two = theta_for_conductor(3, [3], [2])
    assert not two.dr_condition


def test_assemble_without_odd_characters():
    dg = DirichletGroup(7, kernel=(6,))     # the real subfield: c is trivial
    S, T = dirichlet_places(dg, [7], [2])
    table = dirichlet_l_table(dg, S, T)
    assert assemble_theta(dg.group, S, T, table).element.is_zero()


def test_kubota_examples():
    theta = kubota_oracle_theta(3, [3], [5])
    assert theta.element == one_minus_c(theta.group)
    assert kubota_oracle_theta(1).element.is_zero()
    f4 = kubota_oracle_theta(4, [2], [3])
    assert f4.element == one_minus_c(f4.group)
    with pytest.raises(BadConductor):
        kubota_oracle_theta(0)


def test_kubota_unsmoothed_f3():
    theta = kubota_oracle_theta(3, [3], [])
    G = theta.group
    assert theta.element == GroupRingElement.from_dict(G, {G.identity: Fraction(1, 6), G.c: Fraction(-1, 6)}, QQ)


def test_oracle_agreement_sweep():
    rng = random.Random(11)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23]
    for f in range(1, 61):
        if f % 4 == 2:
            continue
        dg = DirichletGroup(f)
        others = [p for p in primes if f % p]
        for _ in range(2):
            T = rng.sample(others, rng.randint(0, 2))
            extra = [p for p in others if p not in T][: rng.randint(0, 1)]
            ramified = sorted(set(dg.prime_powers) | set(extra))
            a = theta_for_conductor(f, extra, T)
            b = kubota_oracle_theta(f, ramified, T)
            assert a.element == b.element, (f, extra, T)


def test_euler_shift_examples():
    theta = theta_for_conductor(3, [3], [5])
    G = theta.group
    dg = DirichletGroup(3)
    # 7 splits (Frobenius trivial), 2 and 11 are inert (Frobenius c)
    assert euler_shift(theta, dg.place(7), "deplete").element.is_zero()
    assert euler_shift(theta, dg.place(2), "deplete").element == one_minus_c(G) * 2
    smoothed = euler_shift(kubota_oracle_theta(3, [3], [5]), dg.place(11), "smooth")
    assert smoothed.element == one_minus_c(G) * 12
    with pytest.raises(AlreadyInSets):
        euler_shift(theta, dg.place(5), "deplete")
    with pytest.raises(RamifiedShift):
        euler_shift(replace(theta, S=("inf",)), dg.place(3), "deplete")


def test_smooth_by_norm_five_inert():
    # (1 - 5c) (1 - c) / 6 = 1 - c: smoothing the unsmoothed element at 5 lands on the fixture theta
    dg = DirichletGroup(3)
    theta = theta_for_conductor(3, [3], [])
    shifted = euler_shift(theta, dg.place(5), "smooth")
    assert shifted.element == one_minus_c(theta.group)
    assert shifted.T == ("5",) and shifted.dr_condition


def test_shift_table_commutes():
    dg = DirichletGroup(13)
    S, T = dirichlet_places(dg, [13], [3])
    table = dirichlet_l_table(dg, S, T)
    theta = assemble_theta(dg.group, S, T, table)
    for q_, mode in ((5, "deplete"), (7, "smooth")):
        place = dg.place(q_)
        S2, T2 = (S + [place], T) if mode == "deplete" else (S, T + [place])
        via = assemble_theta(dg.group, S2, T2, shift_table(table, place, mode))
        assert euler_shift(theta, place, mode).element == via.element


def test_sharp_inverse_duality():
    theta = theta_for_conductor(15, [], [7])
    for chi in theta.group.characters:
        assert sharp(theta.element).evaluate(chi) == theta.element.evaluate(chi.inverse())


def test_two_power_normalization():
    theta = theta_for_conductor(3, [3], [5])
    x = divide_by_2t(theta.element.change_ring(padic_ring(2)), 1)
    assert x.coeffs == (1,)
    with pytest.raises(NotDivisible):
        divide_by_2t(theta.element.change_ring(padic_ring(2)), 2)
