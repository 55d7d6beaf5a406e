"""Finite abelian groups with a distinguished involution, and their characters."""
from functools import cached_property
from itertools import product
from math import gcd, lcm

from .abelian import AbelianGroup, preimage_lattice
from .cyclotomic import Cyclotomic
from .errors import EmptyGroup, NonInvolution, NotSubgroup


class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_k with elements stored as reduced exponent tuples.

    ``c`` is the designated element of order at most two (complex
    conjugation).  The invariants need not form a divisor chain.
    """

    def __init__(self, invariants, c=None):
        invariants = tuple(int(d) for d in invariants)
        if not invariants:
            raise EmptyGroup("a group needs at least one cyclic factor")
        if any(d < 1 for d in invariants):
            raise ValueError("cyclic orders must be positive")
        self.invariants = invariants
        if c is None:
            c = (0,) * len(invariants)
        if len(c) != len(invariants):
            raise ValueError("conjugation vector has the wrong length")
        c = self.reduce(c)
        if self.add(c, c) != self.identity:
            raise NonInvolution(f"{c} does not square to the identity")
        self.c = c

    # elements ---------------------------------------------------------------
    @property
    def rank(self):
        return len(self.invariants)

    @cached_property
    def identity(self):
        return (0,) * self.rank

    @cached_property
    def order(self):
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @cached_property
    def exponent(self):
        return lcm(*self.invariants)

    @cached_property
    def elements(self):
        return [tuple(e) for e in product(*[range(d) for d in self.invariants])]

    @cached_property
    def _index(self):
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g):
        return self._index[self.reduce(g)]

    def reduce(self, g):
        return tuple(int(x) % d for x, d in zip(g, self.invariants))

    def add(self, g, h):
        return tuple((a + b) % d for a, b, d in zip(g, h, self.invariants))

    def neg(self, g):
        return tuple((-a) % d for a, d in zip(g, self.invariants))

    def sub(self, g, h):
        return tuple((a - b) % d for a, b, d in zip(g, h, self.invariants))

    def scale(self, g, k):
        return tuple((a * k) % d for a, d in zip(g, self.invariants))

    def element_order(self, g):
        out = 1
        for a, d in zip(g, self.invariants):
            out = lcm(out, d // gcd(a % d, d))
        return out

    @cached_property
    def generators(self):
        gens = []
        for i, d in enumerate(self.invariants):
            if d > 1:
                gens.append(tuple(1 if j == i else 0 for j in range(self.rank)))
        return gens

    @cached_property
    def mult_table(self):
        idx = self._index
        els = self.elements
        return [[idx[self.add(g, h)] for h in els] for g in els]

    @property
    def has_conjugation(self):
        return self.c != self.identity

    def __eq__(self, other):
        return (isinstance(other, FiniteAbelianGroup) and self.invariants == other.invariants
                and self.c == other.c)

    def __hash__(self):
        return hash((self.invariants, self.c))

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.invariants)}, c={self.c})"

    # minus quotient bookkeeping ----------------------------------------------
    @cached_property
    def minus_reps(self):
        """Orbit representatives of G/<c>: the smaller of {g, gc}."""
        seen = set()
        reps = []
        for g in self.elements:
            if g in seen:
                continue
            gc = self.add(g, self.c)
            seen.add(g)
            seen.add(gc)
            reps.append(min(g, gc))
        return reps

    @cached_property
    def minus_position(self):
        """For each element index: (orbit index, sign) under z[G] -> z[G]_-."""
        rep_index = {r: i for i, r in enumerate(self.minus_reps)}
        out = []
        for g in self.elements:
            if g in rep_index:
                out.append((rep_index[g], 1))
            else:
                out.append((rep_index[self.add(g, self.c)], -1))
        return out

    # characters -------------------------------------------------------------
    @cached_property
    def characters(self):
        return [Character(self, a) for a in self.elements]

    def odd_characters(self):
        return [chi for chi in self.characters if chi.is_odd]

    # subgroups and quotients ---------------------------------------------------
    def subgroup(self, gens):
        return Subgroup(self, [self.reduce(g) for g in gens])

    def quotient(self, gens):
        return QuotientMap(self, [self.reduce(g) for g in gens])

    @cached_property
    def all_subgroups(self):
        found = {frozenset([self.identity]): []}
        frontier = [(frozenset([self.identity]), [])]
        while frontier:
            nxt = []
            for elems, gens in frontier:
                for g in self.elements:
                    if g in elems:
                        continue
                    new = _closure(self, elems, g)
                    if new not in found:
                        found[new] = gens + [g]
                        nxt.append((new, gens + [g]))
            frontier = nxt
        subs = [Subgroup(self, gens) for gens in found.values()]
        subs.sort(key=lambda s: (s.order, sorted(s.elements)))
        return subs


def _closure(G, elems, g):
    out = set(elems)
    power = g
    multiples = []
    while power not in out:
        multiples.append(power)
        power = G.add(power, g)
    new = set(out)
    for h in out:
        for k in multiples:
            new.add(G.add(h, k))
    return frozenset(new)


def build_group(invariants, c_spec=None):
    """Build the group and check that c_spec is an involution."""
    if not invariants:
        raise EmptyGroup("invariants must be nonempty")
    return FiniteAbelianGroup(invariants, c_spec)


class Character:
    """chi(g) = zeta_m^(sum a_i g_i m/d_i) with m the group exponent."""

    def __init__(self, group, dual):
        self.group = group
        self.dual = group.reduce(dual)
        m = group.exponent
        self.m = m
        self.exps = tuple((a * (m // d)) % m for a, d in zip(self.dual, group.invariants))

    def exp_at(self, g):
        return sum(e * x for e, x in zip(self.exps, g)) % self.m

    def __call__(self, g):
        return Cyclotomic.zeta(self.m, self.exp_at(g))

    @cached_property
    def is_odd(self):
        return self.exp_at(self.group.c) != 0

    @property
    def is_trivial(self):
        return not any(self.dual)

    @cached_property
    def order(self):
        return self.group.element_order(self.dual)

    def inverse(self):
        return Character(self.group, self.group.neg(self.dual))

    def power(self, k):
        return Character(self.group, self.group.scale(self.dual, k))

    def restricted_trivial_on(self, elements):
        return all(self.exp_at(g) == 0 for g in elements)

    def __eq__(self, other):
        return isinstance(other, Character) and self.group == other.group and self.dual == other.dual

    def __hash__(self):
        return hash((self.group, self.dual))

    def __repr__(self):
        return f"Character{self.dual}"


def list_characters(G):
    return list(G.characters)


class Subgroup:
    """A subgroup of a FiniteAbelianGroup with an abstract model.

    ``group`` is an abstract FiniteAbelianGroup isomorphic to the subgroup;
    ``embed`` and ``log`` translate between the two.  The abstract model
    carries the parent's c when c lies in the subgroup, else the identity.
    """

    def __init__(self, parent, gens):
        self.parent = parent
        self.gens = [parent.reduce(g) for g in gens]
        k = len(self.gens)
        ambient = AbelianGroup(parent.rank, [[d if i == j else 0 for j in range(parent.rank)]
                                            for i, d in enumerate(parent.invariants)])
        if k:
            L = preimage_lattice(self.gens, k, ambient)
            model = AbelianGroup(k, L.basis)
            orders = model.orders
            images = []
            for i in range(len(orders)):
                v = model.generator(i)
                g = parent.identity
                for coeff, h in zip(v, self.gens):
                    g = parent.add(g, parent.scale(h, coeff))
                images.append(g)
        else:
            orders, images = [], []
        if not orders:
            orders, images = [1], [parent.identity]
        self._images = images
        self.elements = []
        self._log = {}
        tmp = FiniteAbelianGroup(orders)
        for e in tmp.elements:
            g = parent.identity
            for coeff, h in zip(e, images):
                g = parent.add(g, parent.scale(h, coeff))
            self._log[g] = e
            self.elements.append(g)
        c = self._log.get(parent.c, tmp.identity)
        self.group = FiniteAbelianGroup(orders, c)
        self.element_set = frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def embed(self, h):
        g = self.parent.identity
        for coeff, img in zip(h, self._images):
            g = self.parent.add(g, self.parent.scale(img, coeff))
        return g

    def log(self, g):
        g = self.parent.reduce(g)
        if g not in self._log:
            raise NotSubgroup(f"{g} is not in the subgroup")
        return self._log[g]

    def __contains__(self, g):
        return self.parent.reduce(g) in self.element_set

    def generator_images(self):
        """Images in the parent of the abstract generators."""
        return [self._images[i] for i, d in enumerate(self.group.invariants) if d > 1]

    def is_subgroup_of(self, other):
        return self.element_set <= other.element_set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.element_set == other.element_set

    def __hash__(self):
        return hash(self.element_set)

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={self.generator_images()})"


class QuotientMap:
    """The projection G -> G/K onto an abstract FiniteAbelianGroup."""

    def __init__(self, source, kernel_gens):
        self.source = source
        self.kernel = Subgroup(source, kernel_gens)
        rows = [[d if i == j else 0 for j in range(source.rank)] for i, d in enumerate(source.invariants)]
        rows += [list(g) for g in kernel_gens]
        self._model = AbelianGroup(source.rank, rows)
        orders = self._model.orders or [1]
        c = self._project(source.c, len(orders))
        self.target = FiniteAbelianGroup(orders, c)

    def _project(self, g, k):
        co = self._model.coords(g)
        if not co:
            return (0,) * k
        return tuple(co)

    def __call__(self, g):
        return self._project(self.source.reduce(g), self.target.rank)

    def section(self, q):
        """Some preimage of a target element."""
        for g in self.source.elements:
            if self(g) == tuple(q):
                return g
        raise ValueError("element not in the image")
