"""L-values at s = 0 and Stickelberger elements.

For F = Q the values come from generalized Bernoulli numbers; for other base
fields a table of values must be supplied with a provenance string.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclotomic import Cyclotomic, reduction_table
from .dirichlet import DirichletGroup, dirichlet_group
from .errors import (AlreadyInSets, EvenCharacter, IncompleteTable, MissingRamified,
                     NonEquivariantTable, NotDivisible, NotIntegral, RamifiedShift,
                     SetsOverlap, BadConductor)
from .group_ring import QQ, GroupRingElement, divide_by_2t, padic_ring


@dataclass
class LValueTable:
    """Values L_{S,T}(chi^-1, 0) keyed by the dual vector of each odd chi."""

    group: object
    values: dict
    provenance: str = "computed"
    S: tuple = ()
    T: tuple = ()

    def value(self, chi):
        return self.values[chi.dual]


@dataclass
class ThetaElement:
    element: GroupRingElement
    S: tuple
    T: tuple
    t: int = 0
    n: int = 1
    dr_condition: bool = False
    integral: bool = False
    divisible: object = None
    quotient: object = None
    provenance: str = "assembled"
    T_chars: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def group(self):
        return self.element.group


def _labels(places):
    return tuple(v.label for v in places)


def _check_disjoint(S, T):
    common = set(_labels(S)) & set(_labels(T))
    if common:
        raise SetsOverlap(f"places in both S and T: {sorted(common)}")


def l_value_bernoulli(chi):
    """L(chi_prim, 0) = -(1/f) sum_{a=1}^{f} chi_prim(a) a for odd chi."""
    if not chi.is_odd:
        raise EvenCharacter("L(chi, 0) vanishes for even chi; only odd characters are handled")
    return _bernoulli(chi)


@lru_cache(maxsize=4096)
def _bernoulli(chi):
    f = chi.conductor
    bins = [0] * chi.m
    for a in range(1, f + 1):
        e = chi.primitive_exp(a)
        if e is not None:
            bins[e] += a
    return Cyclotomic.from_bins(chi.m, bins, -f)


def smooth_l_value(L, chi, S, T):
    """Remove the Euler factors at S and multiply in the smoothing factors at T."""
    _check_disjoint(S, T)
    in_S = {v.residue_char for v in S if v.is_finite}
    missing = [q for q in chi.ramified_primes if q not in in_S]
    if missing:
        raise MissingRamified(f"S omits the ramified primes {missing}")
    out = L
    for v in S:
        if v.is_finite:
            out = out * (1 - chi.primitive_value(v.residue_char))
    for v in T:
        out = out * (1 - chi.primitive_value(v.residue_char) * v.norm)
    return out


def dirichlet_places(dg, S_primes, T_primes):
    S = [dg.archimedean()] + [dg.place(q) for q in sorted(set(S_primes))]
    T = [dg.place(q) for q in sorted(set(T_primes))]
    return S, T


def dirichlet_l_table(dg, S, T):
    """L_{S,T}(chi^-1, 0) for every odd character of G = (Z/f)^*/K."""
    values = {}
    for chi in dg.characters():
        if chi.is_odd:
            inv = chi.inverse()
            values[chi.character.dual] = smooth_l_value(l_value_bernoulli(inv), inv, S, T)
    return LValueTable(dg.group, values, "computed: generalized Bernoulli numbers",
                       _labels(S), _labels(T))


def _unit_generators(m):
    units = [k for k in range(1, m + 1) if gcd(k, m) == 1]
    gens, reached = [], {1 % m}
    for k in units:
        if k % m in reached:
            continue
        gens.append(k)
        frontier = set(reached)
        while True:
            new = {(x * k) % m for x in frontier} | frontier
            new = {(x * y) % m for x in new for y in reached} | new
            if new == frontier:
                break
            frontier = new
        reached = frontier
    return gens


def check_table(G, table):
    odd = G.odd_characters()
    missing = [chi.dual for chi in odd if chi.dual not in table.values]
    if missing:
        raise IncompleteTable(f"no L-value for the odd characters {missing}")
    m = G.exponent
    for k in _unit_generators(m):
        for chi in odd:
            a = table.values[chi.dual]
            b = table.values[chi.power(k).dual]
            M = a.m * m // gcd(a.m, m)
            if a.lift(M).galois(k) != b:
                raise NonEquivariantTable(
                    f"value at chi^{k} is not the Galois conjugate of the value at chi{chi.dual}")


def _residue_chars(T):
    return tuple(sorted({v.residue_char for v in T if v.is_finite}))


def dr_condition(T, n=1):
    """Residue characteristics in T: two distinct ones, or one exceeding n + 1."""
    return _dr_from_chars(_residue_chars(T), n)


def _dr_from_chars(chars, n):
    return len(set(chars)) >= 2 or any(q > n + 1 for q in chars)


def _fourier_inversion(G, table):
    odd = G.odd_characters()
    if not odd:
        return GroupRingElement.zero(G, QQ)
    M = G.exponent
    for v in table.values.values():
        M = M * v.m // gcd(M, v.m)
    vals = [table.values[chi.dual].lift(M) for chi in odd]
    den = 1
    for v in vals:
        den = den * v.den // gcd(den, v.den)
    V = np.zeros((len(odd), M), dtype=object)
    for i, v in enumerate(vals):
        V[i, :len(v.num)] = [a * (den // v.den) for a in v.num]
    step = M // G.exponent
    E = np.array([[chi.exp_at(g) * step for g in G.elements] for chi in odd], dtype=np.int64)
    idx = (np.arange(M)[None, None, :] + E[:, :, None]) % M
    B = V[np.arange(len(odd))[:, None, None], idx].sum(axis=0)
    R = np.array(reduction_table(M), dtype=object)
    red = B.dot(R)
    if red.shape[1] > 1 and np.any(red[:, 1:] != 0):
        raise NonEquivariantTable("Fourier inversion left irrational coefficients")
    total = G.order * den
    return GroupRingElement(G, [Fraction(int(x), total) for x in red[:, 0]], QQ)


def _finish(theta, p):
    el = theta.element
    theta.integral = el.is_integral()
    if p is not None:
        try:
            theta.quotient = divide_by_2t(el.change_ring(padic_ring(p)), theta.t)
            theta.divisible = True
        except (NotDivisible, NotIntegral) as err:
            theta.divisible = False
            theta.notes.append(str(err))
    return theta


def assemble_theta(G, S, T, table, n=1, t=0, p=None):
    """The element of Q[G] with chi(theta) = L_{S,T}(chi^-1, 0) at odd chi, 0 at even chi."""
    _check_disjoint(S, T)
    check_table(G, table)
    el = _fourier_inversion(G, table)
    theta = ThetaElement(el, _labels(S), _labels(T), t, n, dr_condition(T, n),
                         provenance=table.provenance, T_chars=_residue_chars(T))
    return _finish(theta, p)


def kubota_oracle_theta(f, S_primes=(), T_primes=(), kernel=(), n=1, t=0, p=None):
    """Partial-zeta formula: sum (1/2 - a/f) sigma_a^-1 with Euler corrections."""
    if f < 1:
        raise BadConductor(f"conductor must be positive, got {f}")
    dg = DirichletGroup(f, kernel)
    S, T = dirichlet_places(dg, S_primes, T_primes)
    _check_disjoint(S, T)
    G = dg.group
    if f == 1:
        theta = ThetaElement(GroupRingElement.zero(G, QQ), _labels(S), _labels(T), t, n,
                             dr_condition(T, n), provenance="partial zeta",
                             T_chars=_residue_chars(T))
        return _finish(theta, p)
    missing = [q for q in dg.prime_powers if q not in {v.residue_char for v in S[1:]}]
    if missing:
        raise MissingRamified(f"S omits primes dividing the conductor: {missing}")
    terms = {}
    for a in dg.units:
        g = G.neg(dg.log(a))
        terms[g] = terms.get(g, 0) + Fraction(1, 2) - Fraction(a, f)
    el = GroupRingElement.from_dict(G, terms, QQ)
    for v in S[1:]:
        if f % v.residue_char:
            el = el * _euler_factor(G, v.frobenius, 1)
    for v in T:
        el = el * _euler_factor(G, v.frobenius, v.norm)
    theta = ThetaElement(el, _labels(S), _labels(T), t, n, dr_condition(T, n),
                         provenance="partial zeta", T_chars=_residue_chars(T))
    return _finish(theta, p)


def _euler_factor(G, frob, scale):
    """1 - scale * frob^-1 in Q[G]."""
    one = GroupRingElement.one(G, QQ)
    return one - GroupRingElement.basis(G, G.neg(frob), QQ) * scale


def _shift_scale(place, mode):
    if mode == "deplete":
        return 1
    if mode == "smooth":
        return place.norm
    raise ValueError(f"mode must be 'deplete' or 'smooth', not {mode!r}")


def _check_shift(place, S, T):
    if place.label in S or place.label in T:
        raise AlreadyInSets(f"place {place.label} is already in S or T")
    if not place.is_finite or place.ramified:
        raise RamifiedShift(f"place {place.label} must be finite and unramified")


def euler_shift(theta, place, mode, p=None):
    """Multiply by 1 - sigma^-1 (deplete) or 1 - N sigma^-1 (smooth)."""
    _check_shift(place, theta.S, theta.T)
    scale = _shift_scale(place, mode)
    el = theta.element * _euler_factor(theta.group, place.frobenius, scale)
    S, T = theta.S, theta.T
    if mode == "deplete":
        S = S + (place.label,)
    else:
        T = T + (place.label,)
    out = replace(theta, element=el, S=S, T=T, divisible=None, quotient=None, notes=[])
    if mode == "smooth":
        out.T_chars = tuple(sorted(set(theta.T_chars) | {place.residue_char}))
        out.dr_condition = _dr_from_chars(out.T_chars, theta.n)
    return _finish(out, p)


def shift_table(table, place, mode):
    """The same shift on the L-value side: multiply by 1 - chi^-1(sigma) scale."""
    _check_shift(place, table.S, table.T)
    scale = _shift_scale(place, mode)
    G = table.group
    values = {}
    for dual, v in table.values.items():
        chi = G.characters[G.index(dual)]
        factor = 1 - Cyclotomic.zeta(chi.m, -chi.exp_at(place.frobenius)) * scale
        values[dual] = v * factor
    S, T = table.S, table.T
    if mode == "deplete":
        S = S + (place.label,)
    else:
        T = T + (place.label,)
    return LValueTable(G, values, table.provenance, S, T)


def theta_for_conductor(f, S_primes=(), T_primes=(), kernel=(), n=1, t=0, p=None):
    """Assemble theta for a subfield of Q(zeta_f) from internally computed L-values."""
    dg = dirichlet_group(f, tuple(kernel))
    S_primes = set(S_primes) | set(dg.prime_powers)
    S, T = dirichlet_places(dg, S_primes, T_primes)
    table = dirichlet_l_table(dg, S, T)
    return assemble_theta(dg.group, S, T, table, n=n, t=t, p=p)
