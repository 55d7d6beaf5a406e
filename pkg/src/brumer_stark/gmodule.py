"""Finitely generated G-modules with explicit action matrices.

Elements are integer row vectors modulo a diagonal relation lattice given by
``orders`` (0 marks a free coordinate).  A group element acts on the right:
v -> v * A_g.
"""
from functools import cached_property

from .abelian import AbelianGroup, preimage_lattice, subquotient
from .errors import InvalidModule
from .group_ring import GroupRingElement
from .intlinalg import Lattice, identity, mat_mul, smith_form


def _mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_scale(A, k):
    return [[k * a for a in row] for row in A]


class GModule:
    """A G-module on Z^n / (d_1 Z + ... + d_n Z) with one matrix per generator of G."""

    def __init__(self, group, orders, actions, check=True):
        self.group = group
        self.orders = [int(d) for d in orders]
        self.n = len(self.orders)
        if len(actions) != len(group.generators):
            raise InvalidModule(f"need {len(group.generators)} action matrices, got {len(actions)}")
        self.actions = [self._reduce(A) for A in actions]
        if check:
            self.validate()

    # basic structure ---------------------------------------------------------
    def _reduce(self, A):
        out = []
        for row in A:
            out.append([x % d if d else x for x, d in zip(row, self.orders)])
        return out

    @cached_property
    def relations(self):
        rows = []
        for i, d in enumerate(self.orders):
            if d:
                rows.append([d if j == i else 0 for j in range(self.n)])
        return rows

    @cached_property
    def abelian(self):
        return AbelianGroup(self.n, self.relations)

    @cached_property
    def lattice(self):
        return Lattice(self.relations, self.n)

    def invariants(self):
        return self.abelian.invariants()

    def is_finite(self):
        return all(self.orders)

    def order(self):
        return self.abelian.order()

    def is_zero_vector(self, v):
        return all((x % d == 0) if d else x == 0 for x, d in zip(v, self.orders))

    def validate(self):
        n = self.n
        I = identity(n)
        for A in self.actions:
            for r in self.relations:
                if not self.is_zero_vector(_vec(r, A)):
                    raise InvalidModule("an action matrix does not preserve the relations")
        for k, (A, g) in enumerate(zip(self.actions, self.group.generators)):
            d = self.group.element_order(g)
            P = _mat_pow(A, d, self)
            if not self._same(P, I):
                raise InvalidModule(f"generator {g} does not act with order dividing {d}")
            for B in self.actions[k + 1:]:
                if not self._same(mat_mul(A, B), mat_mul(B, A)):
                    raise InvalidModule("action matrices do not commute")

    def _same(self, A, B):
        return all(self.is_zero_vector([a - b for a, b in zip(ra, rb)]) for ra, rb in zip(A, B))

    # the action ---------------------------------------------------------------
    @cached_property
    def _element_matrices(self):
        G = self.group
        mats = {}
        for g in G.elements:
            # g = sum of g_i e_i over the generators with d_i > 1
            M = identity(self.n)
            k = 0
            for i, d in enumerate(G.invariants):
                if d > 1:
                    if g[i]:
                        M = self._reduce(mat_mul(M, _mat_pow(self.actions[k], g[i], self)))
                    k += 1
            mats[g] = M
        return mats

    def matrix(self, g):
        return self._element_matrices[self.group.reduce(g)]

    def act(self, x):
        """Matrix of a group ring element, given as GroupRingElement or {g: a}."""
        if isinstance(x, GroupRingElement):
            x = x.to_dict()
        out = [[0] * self.n for _ in range(self.n)]
        for g, a in x.items():
            if a:
                out = _mat_add(out, _mat_scale(self.matrix(g), int(a)))
        return self._reduce(out)

    def norm_matrix(self, elements=None):
        elements = self.group.elements if elements is None else elements
        return self.act({g: 1 for g in elements})

    def apply(self, v, g):
        return self.reduce_vector(_vec(v, self.matrix(g)))

    def reduce_vector(self, v):
        return [x % d if d else x for x, d in zip(v, self.orders)]

    def __repr__(self):
        return f"GModule({self.group}, orders={self.orders})"


def _vec(v, A):
    n = len(A[0]) if A else 0
    out = [0] * n
    for x, row in zip(v, A):
        if x:
            for j in range(n):
                if row[j]:
                    out[j] += x * row[j]
    return out


def _mat_pow(A, k, module):
    n = len(A)
    out = identity(n)
    base = A
    while k:
        if k & 1:
            out = module._reduce(mat_mul(out, base))
        base = module._reduce(mat_mul(base, base))
        k >>= 1
    return out


# construction ----------------------------------------------------------------------
def from_presented(group, ngens, relations, actions, check=True):
    """Simplify Z^ngens / relations with the given actions to diagonal form."""
    return presented_with_basis(group, ngens, relations, actions, check)[0]


def presented_with_basis(group, ngens, relations, actions, check=True):
    """Like from_presented, also returning the old-coordinate vector of each new generator."""
    relations = [list(r) for r in relations if any(r)]
    diag, V, Vi = smith_form(relations, len(relations), ngens)
    d = list(diag) + [0] * (ngens - len(diag))
    keep = [i for i in range(ngens) if d[i] != 1]
    new_actions = []
    for A in actions:
        B = mat_mul(mat_mul(Vi, A), V)
        new_actions.append([[B[i][j] for j in keep] for i in keep])
    module = GModule(group, [d[i] for i in keep], new_actions, check)
    return module, [list(Vi[i]) for i in keep], [[row[i] for i in keep] for row in V]


def trivial(group, orders=(0,)):
    n = len(orders)
    return GModule(group, orders, [identity(n) for _ in group.generators])


def sign_module(group, orders=(0,), signs=None):
    """Every generator acts by -1 (or by the given list of +-1)."""
    n = len(orders)
    signs = signs or [-1] * len(group.generators)
    return GModule(group, orders, [_mat_scale(identity(n), s) for s in signs])


def character_sign_module(group, element_sign, orders=(0,)):
    """Generator e_i acts by element_sign(e_i), a function into {+1, -1}."""
    return sign_module(group, orders, [element_sign(g) for g in group.generators])


def regular(group, k=1, modulus=0):
    """(Z/modulus)[G]^k, with basis g e_i in the group's element order."""
    G = group
    N = G.order
    actions = []
    for t in G.generators:
        A = [[0] * (k * N) for _ in range(k * N)]
        for i in range(k):
            for a, g in enumerate(G.elements):
                A[i * N + a][i * N + G.index(G.add(g, t))] = 1
        actions.append(A)
    return GModule(G, [modulus] * (k * N), actions)


def permutation_module(group, subgroup):
    """Z[G/H'] with G permuting the cosets."""
    G = group
    qmap = G.quotient(subgroup.generator_images())
    Q = qmap.target
    actions = []
    for t in G.generators:
        A = [[0] * Q.order for _ in range(Q.order)]
        qt = qmap(t)
        for a, x in enumerate(Q.elements):
            A[a][Q.index(Q.add(x, qt))] = 1
        actions.append(A)
    return GModule(G, [0] * Q.order, actions), qmap


def quotient_of_free(group, k, modulus, generators):
    """(Z/modulus)[G]^k modulo the Z[G]-submodule generated by the given vectors."""
    F = regular(group, k, modulus)
    G = group
    N = G.order
    rels = [list(r) for r in F.relations]
    for v in generators:
        for g in G.elements:
            rels.append(_vec(v, F.matrix(g)))
    return from_presented(G, k * N, rels, F.actions)


def direct_sum(M1, M2):
    if M1.group != M2.group:
        raise InvalidModule("modules over different groups")
    n1, n2 = M1.n, M2.n
    actions = []
    for A, B in zip(M1.actions, M2.actions):
        C = [row + [0] * n2 for row in A] + [[0] * n1 + row for row in B]
        actions.append(C)
    return GModule(M1.group, M1.orders + M2.orders, actions, check=False)


def restrict(M, subgroup):
    """The restriction to a Subgroup, over its abstract model group."""
    H = subgroup.group
    actions = []
    for i, d in enumerate(H.invariants):
        if d > 1:
            e = tuple(1 if j == i else 0 for j in range(H.rank))
            actions.append(M.matrix(subgroup.embed(e)))
    return GModule(H, M.orders, actions, check=False)


def inflate(M, qmap):
    """A module for G/K viewed as a G-module."""
    if M.group != qmap.target:
        raise InvalidModule("module is not over the quotient group")
    G = qmap.source
    actions = [M.matrix(qmap(t)) for t in G.generators]
    return GModule(G, M.orders, actions, check=False)


def induce(M, subgroup):
    """Z[G] tensored over the subgroup with M, for M over subgroup.group.

    The basis is r (x) m_i for the coset representatives r in the order of the
    quotient's elements.  Returns (module, qmap, representatives).
    """
    G = subgroup.parent
    qmap = G.quotient(subgroup.generator_images())
    Q = qmap.target
    reps = [qmap.section(q) for q in Q.elements]
    n = M.n
    k = len(reps)
    actions = []
    for t in G.generators:
        A = [[0] * (k * n) for _ in range(k * n)]
        for j, r in enumerate(reps):
            tr = G.add(t, r)
            jj = Q.index(qmap(tr))
            h = subgroup.log(G.sub(tr, reps[jj]))
            Mh = M.matrix(h)
            for i in range(n):
                A[j * n + i][jj * n:(jj + 1) * n] = Mh[i]
        actions.append(A)
    return GModule(G, list(M.orders) * k, actions, check=False), qmap, reps


def check_trivial_on(M, elements):
    for h in elements:
        if not M._same(M.matrix(h), identity(M.n)):
            raise InvalidModule(f"{h} does not act trivially")


# subgroups and quotients of the underlying group --------------------------------------
def invariant_lattice(M, elements=None):
    """Lattice of vectors fixed mod relations by the given group elements (default: generators)."""
    G = M.group
    elements = G.generators if elements is None else elements
    n = M.n
    if not elements:
        return Lattice(identity(n), n)
    cols = []
    for g in elements:
        A = M.matrix(g)
        cols.append([[A[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)])
    F = [sum((blk[i] for blk in cols), []) for i in range(n)]
    target = AbelianGroup(n * len(elements), _block_relations(M.relations, n, len(elements)))
    return preimage_lattice(F, n, target)


def _block_relations(rels, n, k):
    out = []
    for b in range(k):
        for r in rels:
            out.append([0] * (b * n) + list(r) + [0] * ((k - b - 1) * n))
    return out


def invariants_group(M, elements=None):
    K = invariant_lattice(M, elements)
    return subquotient(K, M.relations)


def coinvariants_group(M, elements=None):
    G = M.group
    elements = G.generators if elements is None else elements
    rows = list(M.relations)
    for g in elements:
        A = M.matrix(g)
        rows += [[A[i][j] - (1 if i == j else 0) for j in range(M.n)] for i in range(M.n)]
    return AbelianGroup(M.n, rows)


def image_quotient(M, x):
    """M / xM for a group ring element x, as an abelian group."""
    A = M.act(x)
    return AbelianGroup(M.n, list(M.relations) + A)


def plus_part(M):
    """M_+ = M / (1 - c) M."""
    G = M.group
    return image_quotient(M, {G.identity: 1, G.c: -1} if G.c != G.identity else {})


def minus_part(M):
    """M_- = M / (1 + c) M."""
    G = M.group
    if G.c == G.identity:
        return image_quotient(M, {G.identity: 2})
    return image_quotient(M, {G.identity: 1, G.c: 1})


def two_torsion(A):
    """Invariants of A[2] for a finitely generated abelian group A."""
    return [2 for d in A.invariants() if d and d % 2 == 0]

