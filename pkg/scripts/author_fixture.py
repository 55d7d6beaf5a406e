"""Author q_zeta3_T5.case: H = Q(zeta_3) over Q, S = {inf, 3}, T = {5}, P above 7.

All unit and class-group data is computed here with sympy, independently of
the package: arithmetic in Z[w] (w^2 + w + 1 = 0) and in O/5O = F_25.

    python3 scripts/author_fixture.py > src/brumer_stark/data/q_zeta3_T5.case
"""
import json
import sys
from itertools import product

import sympy
from sympy import GF, Poly, symbols

ORACLE = f"sympy {sympy.__version__} via scripts/author_fixture.py"
w = symbols("w")
MIN = Poly(w**2 + w + 1, w)


def mul(a, b):
    """Product in Z[w] of pairs (x, y) meaning x + y w."""
    return tuple(int(c) for c in _coeffs((Poly(a[0] + a[1] * w, w) * Poly(b[0] + b[1] * w, w)).rem(MIN)))


def _coeffs(p):
    c = p.all_coeffs()[::-1] + [0, 0]
    return c[0], c[1]


def conj(a):
    # w -> w^2 = -1 - w
    return (a[0] - a[1], -a[1])


def norm(a):
    x = mul(a, conj(a))
    assert x[1] == 0
    return x[0]


def roots_of_unity():
    out, x = [], (1, 0)
    for _ in range(6):
        out.append(x)
        x = mul(x, (1, 1))  # 1 + w = -w^2 is a primitive 6th root of unity
    assert x == (1, 0)
    return out


# F_25 = F_5[w] / (w^2 + w + 1); 5 is inert since 5 = 2 mod 3
F5 = GF(5)
MIN5 = Poly(w**2 + w + 1, w, domain=F5)


def red5(a):
    return Poly(a[0] + a[1] * w, w, domain=F5).rem(MIN5)


def pow5(p, k):
    out = Poly(1, w, domain=F5)
    for _ in range(k):
        out = (out * p).rem(MIN5)
    return out


def field_elements():
    return [Poly(x + y * w, w, domain=F5) for x, y in product(range(5), repeat=2) if (x, y) != (0, 0)]


def primitive_element():
    for g in field_elements():
        if all(pow5(g, 24 // q) != Poly(1, w, domain=F5) for q in (2, 3)):
            return g
    raise RuntimeError("no primitive element")


def dlog(g, x):
    y = Poly(1, w, domain=F5)
    for k in range(24):
        if y == x:
            return k
        y = (y * g).rem(MIN5)
    raise RuntimeError("not a unit")


def main():
    pi = (3, 1)                      # 3 + w
    assert norm(pi) == 7
    pibar = conj(pi)
    # u = eps * pi / pibar with eps a root of unity and u = 1 mod 5
    chosen = None
    for eps in roots_of_unity():
        if red5(mul(eps, pi)) == red5(pibar):
            chosen = eps
    assert chosen is not None
    u_num, u_den = mul(chosen, pi), pibar
    # |u| = 1 at the complex place: u * conj(u) = 1
    assert mul(u_num, conj(u_num)) == mul(u_den, conj(u_den))
    # ord_P(u) = 1 and ord_{cP}(u) = -1 for P = (pi), cP = (pibar): 7 splits, so pibar is
    # not an associate of pi
    assert all(mul(e, pi) != pibar for e in roots_of_unity())

    # Cl^T(H) = (O/5)^* / image of O^*, since Q(zeta_3) has class number one
    g = primitive_element()
    unit_logs = sorted({dlog(g, red5(e)) for e in roots_of_unity()})
    order = 24
    for k in unit_logs:
        order = sympy.gcd(order, k)
    order = int(order)               # the unit image is generated by g^order
    # c sends w to w^2 = -1 - w; on the cyclic quotient it multiplies by log(c(g))
    c_g = Poly(g.as_expr().subs(w, -1 - w), w, domain=F5).rem(MIN5)
    c_action = dlog(g, c_g) % order
    # Cl^T(Q) = (Z/5)^* / {+-1}
    plus = 4 // 2

    case = {
        "schema_version": 1,
        "name": "q_zeta3_T5",
        "description": "H = Q(zeta_3), F = Q, S = {inf, 3}, T = {5}, P above 7",
        "group": {"invariants": [2], "c": [1]},
        "base_field": {"name": "Q", "degree": 1, "conductor": 3},
        "places": [
            {"label": "inf", "kind": "S", "archimedean": True},
            {"label": "3", "kind": "S", "prime": 3},
            {"label": "5", "kind": "T", "prime": 5},
            {"label": "7", "kind": "none", "prime": 7},
        ],
        "class_group": {
            "provenance": f"{ORACLE}: (O/5O)^* = F_25^* modulo the six roots of unity",
            "invariants": [order],
            "actions": [[[c_action]]],
        },
        "class_group_plus": {
            "provenance": f"{ORACLE}: (Z/5)^* modulo +-1",
            "invariants": [plus],
        },
        "bs_unit": {
            "provenance": f"{ORACLE}: u = eps (3 + w) / (3 + w^2) with eps = {chosen[0]} + {chosen[1]} w",
            "prime_label": "7",
            "generator": "3 + w",
            "theta_exponent": 0,
            "valuations": [{"sigma": [0], "ord": 1}, {"sigma": [1], "ord": -1}],
            "absolute_value_one": {"attested": True, "provenance": ORACLE,
                                   "detail": "u times its complex conjugate is 1"},
            "t_congruence": {"attested": True, "provenance": ORACLE,
                             "detail": "u = 1 mod 5 O_H"},
        },
        "parameters": {"p": 2, "t": 0, "n": 1, "annihilation_exponent": 0},
    }
    json.dump(case, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
