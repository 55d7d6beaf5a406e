"""Local lattices W_w and the divisor modules X, Y built from place data.

Places carry their decomposition and inertia subgroups inside G.  Y is the sum
of Z[G/G_v] over v in S and of the induced duals of W_w over ramified places
outside S and T; X is the kernel of the degree map Y -> Z.
"""
from dataclasses import dataclass, field

from .abelian import AbelianGroup, Hom, homology
from .cohomology import tor_sign
from .cyclotomic import Cyclotomic
from .errors import (InconsistentSets, MissingDecompositionData, PlaceInSorT,
                     TrivialConjugation)
from .gmodule import (GModule, _vec, direct_sum, induce, minus_part, permutation_module,
                      presented_with_basis, regular)
from .intlinalg import Lattice, row_kernel


@dataclass
class LocalPlace:
    """A place of F with decomposition data in G.

    ``decomposition`` and ``inertia`` are generator lists (elements of G);
    ``frobenius`` is any element of G_w lifting the Frobenius of G_w / I_w.
    ``kind`` is 'S', 'T' or '' for neither.
    """

    label: str
    decomposition: list = None
    inertia: list = field(default_factory=list)
    frobenius: tuple = None
    kind: str = ""
    archimedean: bool = False

    def subgroups(self, G):
        if self.decomposition is None:
            raise MissingDecompositionData(f"place {self.label} has no decomposition group")
        Gw = G.subgroup(self.decomposition)
        Iw = G.subgroup(self.inertia)
        if not Iw.is_subgroup_of(Gw):
            raise MissingDecompositionData(f"inertia is not inside the decomposition group at {self.label}")
        if self.archimedean and (Iw != Gw or Gw.order > 2):
            raise MissingDecompositionData(f"archimedean place {self.label} needs I_w = G_w of order <= 2")
        if self.frobenius is None:
            return Gw, Iw, None
        frob = G.reduce(self.frobenius)
        if frob not in Gw:
            raise MissingDecompositionData(f"Frobenius at {self.label} is not in G_w")
        if G.subgroup(list(Iw.generator_images()) + [frob]) != Gw:
            raise MissingDecompositionData(f"G_w / I_w is not generated by Frobenius at {self.label}")
        return Gw, Iw, frob

    @property
    def ramified(self):
        return bool(self.inertia) and any(any(g) for g in self.inertia)


# W_w ------------------------------------------------------------------------------------
@dataclass
class LocalW:
    """W_w inside (augmentation ideal of Z[G_w]) x Z[G_w/I_w], with pi_1, pi_2 and the dual.

    Coordinates of Z[G_w] follow the abstract model's element order.
    ``dual`` is the cokernel of (pi_1, pi_2) into Z[G_w]^2 and ``degree`` the
    map dual -> Z induced by (a, b) -> augmentation(a).
    """

    place: LocalPlace
    decomposition: object
    lattice: Lattice
    module: GModule
    pi1: list
    pi2: list
    dual: GModule
    degree: list
    metadata: dict

    def pi(self, which, w):
        M = self.pi1 if which == 1 else self.pi2
        return _vec(w, M)


def build_local_W(G, place):
    """Solve x mod I_w = (1 - sigma^-1) y for (x, y) with x in the augmentation ideal."""
    if place.kind in ("S", "T"):
        raise PlaceInSorT(f"place {place.label} lies in {place.kind}")
    Gw, Iw, frob = place.subgroups(G)
    if frob is None:
        if Iw != Gw:
            raise MissingDecompositionData(f"place {place.label} needs a Frobenius")
        frob = G.identity
    H = Gw.group
    cosets, qmap = permutation_module(H, H.subgroup([Gw.log(g) for g in Iw.generator_images()]))
    Q = qmap.target
    N, m = H.order, Q.order
    sigma_inv = Q.neg(qmap(Gw.log(frob)))
    # condition columns: augmentation of x, then the m coordinates of xbar - (1 - sigma^-1) y
    cond = []
    for h in H.elements:
        row = [1] + [0] * m
        row[1 + Q.index(qmap(h))] += 1
        cond.append(row)
    for q in Q.elements:
        row = [0] * (1 + m)
        row[1 + Q.index(q)] -= 1
        row[1 + Q.index(Q.add(q, sigma_inv))] += 1
        cond.append(row)
    K = Lattice(row_kernel(cond, N + m), N + m)
    ambient = direct_sum(regular(H), cosets)
    actions = [[list(K.coords(_vec(b, ambient.matrix(t)))) for b in K.basis] for t in H.generators]
    W = GModule(H, [0] * K.rank, actions)
    pi1 = [list(b[:N]) for b in K.basis]
    norm_cols = [[1 if qmap(h) == q else 0 for h in H.elements] for q in Q.elements]
    pi2 = [_vec(b[N:], norm_cols) for b in K.basis]
    free2 = regular(H, 2)
    rels = [p1 + p2 for p1, p2 in zip(pi1, pi2)]
    dual, gens, _ = presented_with_basis(H, 2 * N, rels, free2.actions)
    degree = [sum(v[:N]) for v in gens]
    meta = {
        "rank": K.rank,
        "dual_torsion_free": dual.is_finite() is False and all(d == 0 for d in dual.orders),
        "dual_matches_hom": _dual_traces_match(W, dual),
        "two_term_complex": "V_w -> Z[G_w]^2 with H^0 = local units and H^1 = dual (not built)",
    }
    return LocalW(place, Gw, K, W, pi1, pi2, dual, degree, meta)


def _trace(A):
    return sum(A[i][i] for i in range(len(A)))


def _dual_traces_match(W, dual):
    """Rational traces of the dual against those of Hom(W, Z) (g acting as g^-1 transposed)."""
    H = W.group
    if dual.n != W.n:
        return False
    return all(_trace(dual.matrix(g)) == _trace(W.matrix(H.neg(g))) for g in H.elements)


# X and Y ----------------------------------------------------------------------------------
@dataclass
class DivisorModules:
    """Y with its degree map to Z, and X = ker(degree), both as G-modules.

    ``blocks`` lists (label, kind, offset, rank) for the summands of Y, where
    kind is 'S' for Z[G/G_v] and 'W' for an induced dual of W_w.
    """

    group: object
    places: list
    Y: GModule
    degree: list
    X: GModule
    inclusion: list
    blocks: list

    @property
    def Y_minus(self):
        return minus_module(self.Y)

    @property
    def X_minus(self):
        return minus_module(self.X)

    def places_over(self, kind="S"):
        """Number of places of the top field above places of the given kind."""
        return sum(r for _, k, _, r in self.blocks if k == kind)


def minus_module(M):
    """M / (1 + c) M as a G-module on which c acts by -1."""
    G = M.group
    A = M.act({G.identity: 1, G.c: 1} if G.c != G.identity else {G.identity: 2})
    return presented_with_basis(G, M.n, list(M.relations) + A, M.actions, check=False)[0]


def _s_block(G, place):
    Gv, _, _ = place.subgroups(G)
    module, _ = permutation_module(G, Gv)
    return module, [1] * module.n


def _w_block(G, place):
    local = build_local_W(G, place)
    module, _, _ = induce(local.dual, local.decomposition)
    k = module.n // local.dual.n
    return module, list(local.degree) * k


def build_XY_minus(G, places):
    """Y = sum over S of Z[G/G_v] plus induced duals of W_w at ramified places outside S and T."""
    S = [v for v in places if v.kind == "S"]
    if not S:
        raise InconsistentSets("S must contain at least one place")
    for v in places:
        if v.archimedean and v.kind not in ("S", "T"):
            raise InconsistentSets(f"archimedean place {v.label} must lie in S or T")
    parts, degree, blocks = [], [], []
    offset = 0
    for v in places:
        if v.kind == "S":
            module, deg = _s_block(G, v)
            kind = "S"
        elif v.kind == "" and v.ramified:
            module, deg = _w_block(G, v)
            kind = "W"
        else:
            v.subgroups(G)
            continue
        parts.append(module)
        degree.extend(deg)
        blocks.append((v.label, kind, offset, module.n))
        offset += module.n
    Y = parts[0]
    for P in parts[1:]:
        Y = direct_sum(Y, P)
    K = Lattice(row_kernel([[d] for d in degree], len(degree)), len(degree))
    actions = [[list(K.coords(_vec(b, Y.matrix(t)))) for b in K.basis] for t in G.generators]
    X = GModule(G, [0] * K.rank, actions, check=False)
    return DivisorModules(G, list(places), Y, degree, X, [list(b) for b in K.basis], blocks)


def is_exact(dm):
    """0 -> X -> Y -> Z -> 0 is exact."""
    Z = AbelianGroup(1)
    injective = Hom(dm.X.abelian, dm.Y.abelian, dm.inclusion).is_injective()
    try:
        middle = homology(dm.inclusion, [[d] for d in dm.degree], dm.Y.abelian, Z)[0]
    except ValueError:
        return False
    onto = Hom(dm.Y.abelian, Z, [[d] for d in dm.degree]).is_surjective()
    return injective and middle.is_trivial() and onto


def exactness_and_size_check(dm):
    """Exactness of 0 -> X -> Y -> Z -> 0, Tor_1(X, Z[G]_-) and the size of X_-.

    The vanishing of Tor_1 is asserted when some place of S has c in its
    decomposition group and every ramified place lies in S or T.  Without the
    latter, blocks from W_w on which c acts nontrivially can contribute
    2-torsion; the report then records Tor_1 without asserting anything.
    """
    G = dm.group
    if not G.has_conjugation:
        raise TrivialConjugation("the minus part needs c != 1")
    c_in_S = any(G.c in v.subgroups(G)[0] for v in dm.places if v.kind == "S")
    ramified_covered = not any(k == "W" for _, k, _, _ in dm.blocks)
    tor = tor_sign(dm.X, "-", 1).invariants() if dm.X.n else []
    report = {
        "exact": is_exact(dm),
        "c_in_some_S_place": c_in_S,
        "ramified_in_S_or_T": ramified_covered,
        "hypothesis": c_in_S and ramified_covered,
        "tor1_minus": tor,
        "tor1_vanishes": not tor,
    }
    report["tor_consistent"] = (not report["hypothesis"]) or report["tor1_vanishes"]
    all_c = ramified_covered and all(G.c in v.subgroups(G)[0] for v in dm.places if v.kind == "S")
    report["all_c"] = all_c
    if all_c:
        size = minus_part(dm.X).order() if dm.X.n else 1
        predicted = 2 ** (dm.places_over("S") - 1)
        report["size_X_minus"] = size
        report["predicted"] = predicted
        report["size_matches"] = size == predicted
    return report


def character_rank_profile(G, places, chi):
    """(dim of the chi-part of X over S and archimedean T places, the same over S alone).

    The count is #{v : chi trivial on G_v} minus one for the trivial character.
    """
    def count(pool):
        n = 0
        for v in pool:
            Gv, _, _ = v.subgroups(G)
            if chi.restricted_trivial_on(Gv.elements):
                n += 1
        return n - (1 if chi.is_trivial else 0)

    S = [v for v in places if v.kind == "S"]
    if not S:
        raise InconsistentSets("S must contain at least one place")
    units = S + [v for v in places if v.kind == "T" and v.archimedean]
    return count(units), count(S)


def character_dimension(M, chi):
    """dim of the chi-part of M (x) C, from the traces of the action on a torsion-free M."""
    G = M.group
    bins = [0] * chi.m
    for g in G.elements:
        bins[(-chi.exp_at(g)) % chi.m] += _trace(M.matrix(g))
    return Cyclotomic.from_bins(chi.m, bins, G.order).to_fraction()
