"""Random generators and a randomized invariant suite.

The generators are shared with the test suite.  ``run`` draws a small batch
of each kind and checks the identities that must hold for every draw.
"""
import random
import time

from .cohomology import plus_to_module_kernel, tor_sign
from .fitting import Presentation, brute_force_order, fitting_generator, module_size
from .gmodule import GModule, direct_sum, permutation_module, quotient_of_free, sign_module, trivial
from .group_ring import GroupRingElement, minus_project, padic_ring
from .groups import FiniteAbelianGroup
from .ritter_weiss import LocalPlace, build_XY_minus, exactness_and_size_check
from .stickelberger import kubota_oracle_theta, theta_for_conductor


# groups ------------------------------------------------------------------------------
def _chains(n, start=1):
    """Invariant-factor lists d_1 | d_2 | ... with product n."""
    if n == 1:
        return [[]]
    out = []
    for d in range(max(start, 2), n + 1):
        if n % d == 0 and d % start == 0:
            for rest in _chains(n // d, d):
                out.append([d] + rest)
    return out


def abelian_groups(max_order):
    """Every finite abelian group of order <= max_order, once each."""
    return [inv for n in range(2, max_order + 1) for inv in _chains(n)]


def involutions(invariants):
    G = FiniteAbelianGroup(invariants)
    return [g for g in G.elements if g != G.identity and G.add(g, g) == G.identity]


def groups_with_conjugation(max_order):
    """(invariants, [each involution as a FiniteAbelianGroup]) for even-order groups."""
    out = []
    for inv in abelian_groups(max_order):
        cs = involutions(inv)
        if cs:
            out.append((inv, [FiniteAbelianGroup(inv, c) for c in cs]))
    return out


def random_group(rng, max_order=16):
    inv, gs = rng.choice(groups_with_conjugation(max_order))
    return rng.choice(gs)


# modules -----------------------------------------------------------------------------
def random_finite_module(G, rng):
    """A small finite G-module: a quotient of (Z/m)[G], a twisted cyclic module, or a sum."""
    kind = rng.randrange(4)
    m = rng.choice([2, 2, 3, 4, 6, 8])
    if kind == 0:
        gens = []
        for _ in range(rng.randint(0, 2)):
            gens.append([rng.randrange(m) for _ in range(G.order)])
        return quotient_of_free(G, 1, m, gens)
    if kind == 1:
        return trivial(G, (m,))
    if kind == 2:
        signs = [rng.choice([1, -1]) if G.element_order(g) % 2 == 0 else 1 for g in G.generators]
        return sign_module(G, (m,), signs)
    H = G.subgroup([rng.choice(G.elements)])
    P, _ = permutation_module(G, H)
    return GModule(G, [m] * P.n, P.actions)


def random_module_pair(G, rng):
    M = random_finite_module(G, rng)
    if rng.random() < 0.25:
        M = direct_sum(M, random_finite_module(G, rng))
    return M


# presentations ---------------------------------------------------------------------------
def random_minus_element(G, rng, ring, bound=3):
    terms = {g: rng.randint(-bound, bound) for g in G.elements if rng.random() < 0.6}
    return minus_project(GroupRingElement.from_dict(G, terms, ring))


def random_presentation(G, rng, p, precision=64, max_gens=2):
    """A random square presentation over Z_p[G]_- with small integer entries."""
    ring = padic_ring(p, precision)
    r = rng.randint(1, max_gens)
    rows = [[random_minus_element(G, rng, ring) for _ in range(r)] for _ in range(r)]
    return Presentation(G, r, rows, minus=True, ring=ring)


# place configurations --------------------------------------------------------------------
def random_places(G, rng, max_places=3, allow_w=True):
    """Random decomposition data; at least one place lies in S."""
    kinds = ["S", "S", "", "T"] if allow_w else ["S", "S", "T"]
    places = []
    for i in range(rng.randint(1, max_places)):
        kind = rng.choice(kinds)
        D = [rng.choice(G.elements)]
        if rng.random() < 0.3:
            D.append(rng.choice(G.elements))
        Gv = G.subgroup(D)
        gens = Gv.generator_images()
        if kind == "S" and rng.random() < 0.5:
            I = []
        else:
            I = rng.sample(gens, rng.randint(0, len(gens)))
        Iw = G.subgroup(I)
        frob = next((h for h in Gv.elements
                     if G.subgroup(list(Iw.generator_images()) + [h]) == Gv), None)
        places.append(LocalPlace(f"v{i}", D, I, frob, kind))
    if not any(v.kind == "S" for v in places):
        places.append(LocalPlace("s", [G.c], [], G.c, "S"))
    return places


def all_c_places(G, rng, max_places=3):
    """Places of S only, each unramified with c in its (cyclic) decomposition group."""
    over_c = [h for h in G.elements if G.c in G.subgroup([h]).elements]
    places = []
    for i in range(rng.randint(1, max_places)):
        h = rng.choice(over_c)
        places.append(LocalPlace(f"v{i}", [h], [], h, "S"))
    return places


# the suite -------------------------------------------------------------------------------
def _tor_draw(rng):
    G = random_group(rng, 8)
    M = random_module_pair(G, rng)
    same = all(sorted(tor_sign(M, s, i).invariants()) == sorted(tor_sign(M, s, i, "generic").invariants())
               for s in "+-" for i in (1, 2))
    kernel = sorted(tor_sign(M, "-", 1).invariants()) == sorted(plus_to_module_kernel(M).invariants())
    shift = sorted(tor_sign(M, "-", 2).invariants()) == sorted(tor_sign(M, "+", 1).invariants())
    return same and kernel and shift


def _theta_draw(rng):
    f = rng.choice([3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16])
    T = [q for q in (5, 7, 11, 13, 17, 19) if f % q][:rng.randint(1, 2)]
    a = theta_for_conductor(f, (), T)
    b = kubota_oracle_theta(f, [q for q in (2, 3, 5, 7, 11, 13) if f % q == 0], T)
    return a.element == b.element


def _fitting_draw(rng):
    G = random_group(rng, 8)
    p = rng.choice([2, 3])
    P = random_presentation(G, rng, p)
    x = fitting_generator(P)
    return module_size(x, G.odd_characters(), p) == brute_force_order(P, p)


def _xmodule_draw(rng):
    G = random_group(rng, 8)
    report = exactness_and_size_check(build_XY_minus(G, random_places(G, rng)))
    return report["exact"] and report["tor_consistent"] and report.get("size_matches", True)


SUITES = {
    "tor": _tor_draw,
    "theta": _theta_draw,
    "fitting": _fitting_draw,
    "x_module": _xmodule_draw,
}


def run(seed=0, draws=10):
    """{suite: {'draws', 'failures', 'seconds'}} for a seeded batch of each suite."""
    out = {}
    for name, draw in SUITES.items():
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        failures = sum(1 for _ in range(draws) if not draw(rng))
        out[name] = {"draws": draws, "failures": failures,
                     "seconds": round(time.perf_counter() - start, 3)}
    return out
