"""Group cohomology, Tate cohomology and Tor for finite abelian groups.

Two independent routes are provided: the tensor product of the periodic
resolutions of the cyclic factors, and normalized bar cochains.  Tor against
Z[G]/(1 +- c) is computed from the 2-periodic resolution by c +- 1 and,
independently, from a greedily built free resolution.
"""
from functools import lru_cache
from itertools import product

from .abelian import AbelianGroup, homology, subquotient
from .errors import TrivialConjugation
from .gmodule import _block_relations, coinvariants_group, invariant_lattice
from .intlinalg import Lattice, identity, row_kernel


# the periodic resolution ---------------------------------------------------------
def _factors(G):
    """(generator, order) for each nontrivial cyclic factor."""
    out = []
    for i, d in enumerate(G.invariants):
        if d > 1:
            out.append((tuple(1 if j == i else 0 for j in range(G.rank)), d))
    return out


@lru_cache(maxsize=None)
def _indices(s, k):
    if s == 0:
        return [()] if k == 0 else []
    return [K for K in product(range(k + 1), repeat=s) if sum(K) == k]


def _delta(G, gen, d, k):
    """The operator of the cyclic resolution in degree k: t - 1 (odd) or the norm (even)."""
    if k % 2:
        return {gen: 1, G.identity: -1} if gen != G.identity else {}
    out = {}
    g = G.identity
    for _ in range(d):
        out[g] = out.get(g, 0) + 1
        g = G.add(g, gen)
    return out


def _boundary_blocks(M, k):
    """Blocks (K', K, matrix) of the resolution boundary P_k -> P_{k-1} acting on M."""
    G = M.group
    fac = _factors(G)
    s = len(fac)
    mats = {}
    blocks = []
    for Kp in _indices(s, k):
        sign_sum = 0
        for j, (gen, d) in enumerate(fac):
            kj = Kp[j]
            if kj >= 1:
                K = Kp[:j] + (kj - 1,) + Kp[j + 1:]
                key = (j, kj % 2)
                if key not in mats:
                    mats[key] = M.act(_delta(G, gen, d, kj))
                A = mats[key]
                sign = -1 if sign_sum % 2 else 1
                blocks.append((Kp, K, A if sign == 1 else [[-x for x in row] for row in A]))
            sign_sum += kj
    return blocks


def _sum_group(M, r):
    return AbelianGroup(M.n * r, _block_relations(M.relations, M.n, r))


def _assemble(blocks, rows_index, cols_index, n):
    R = [[0] * (len(cols_index) * n) for _ in range(len(rows_index) * n)]
    for a, b, A in blocks:
        ra = rows_index[a] * n
        cb = cols_index[b] * n
        for i in range(n):
            Ri = R[ra + i]
            Ai = A[i]
            for j in range(n):
                if Ai[j]:
                    Ri[cb + j] += Ai[j]
    return R


def cochain_differential(M, k):
    """d^k : Hom_G(P_k, M) -> Hom_G(P_{k+1}, M) as an integer matrix (rows = sources)."""
    s = len(_factors(M.group))
    src = {K: i for i, K in enumerate(_indices(s, k))}
    dst = {K: i for i, K in enumerate(_indices(s, k + 1))}
    blocks = [(K, Kp, A) for Kp, K, A in _boundary_blocks(M, k + 1)]
    return _assemble(blocks, src, dst, M.n), len(src), len(dst)


def chain_differential(M, k):
    """d_k : P_k (x) M -> P_{k-1} (x) M."""
    s = len(_factors(M.group))
    src = {K: i for i, K in enumerate(_indices(s, k))}
    dst = {K: i for i, K in enumerate(_indices(s, k - 1))}
    return _assemble(_boundary_blocks(M, k), src, dst, M.n), len(src), len(dst)


def _cohomology_resolution(M, i):
    D, r_i, r_next = cochain_differential(M, i)
    middle = _sum_group(M, r_i)
    target = _sum_group(M, r_next)
    prev = cochain_differential(M, i - 1)[0] if i > 0 else None
    return homology(prev, D if r_next else None, middle, target)[0] if r_i else AbelianGroup(0)


def _homology_resolution(M, i):
    s = len(_factors(M.group))
    r_i = len(_indices(s, i))
    if r_i == 0:
        return AbelianGroup(0)
    middle = _sum_group(M, r_i)
    D_next = chain_differential(M, i + 1)[0]
    if i == 0:
        return homology(D_next, None, middle, middle)[0]
    D, _, r_prev = chain_differential(M, i)
    target = _sum_group(M, r_prev)
    return homology(D_next, D, middle, target)[0]


# bar cochains -----------------------------------------------------------------------
def bar_differential(M, k, elements=None):
    """Normalized inhomogeneous cochains C^k -> C^{k+1} on the given subgroup elements."""
    G = M.group
    elements = [g for g in (G.elements if elements is None else elements) if g != G.identity]
    n = M.n
    src = {T: i for i, T in enumerate(product(elements, repeat=k))}
    dst = {T: i for i, T in enumerate(product(elements, repeat=k + 1))}
    I = identity(n)
    neg = [[-x for x in row] for row in I]
    blocks = []
    for Tp in dst:
        blocks.append((Tp[1:], Tp, M.matrix(Tp[0])))
        for i in range(1, k + 1):
            prod_ = G.add(Tp[i - 1], Tp[i])
            if prod_ != G.identity:
                T = Tp[:i - 1] + (prod_,) + Tp[i + 1:]
                blocks.append((T, Tp, I if i % 2 == 0 else neg))
        blocks.append((Tp[:k], Tp, I if (k + 1) % 2 == 0 else neg))
    return _assemble(blocks, src, dst, n), src, dst


def _cohomology_bar(M, i, elements=None):
    D, src, dst = bar_differential(M, i, elements)
    middle = _sum_group(M, len(src))
    target = _sum_group(M, len(dst))
    prev = bar_differential(M, i - 1, elements)[0] if i > 0 else None
    if not dst:
        return homology(prev, None, middle, middle)[0]
    return homology(prev, D, middle, target)[0]


def cohomology_group(M, i, method="resolution"):
    """H^i(G, M) as an AbelianGroup."""
    if i < 0:
        raise ValueError("degree must be nonnegative")
    if method == "bar":
        return _cohomology_bar(M, i)
    return _cohomology_resolution(M, i)


def homology_group(M, i):
    return _homology_resolution(M, i)


def tate_group(M, i):
    """Tate cohomology: H^i for i >= 1, M^G/NM, ker N / I_G M, H_{-i-1} for i <= -2."""
    if i >= 1:
        return _cohomology_resolution(M, i)
    if i <= -2:
        return _homology_resolution(M, -i - 1)
    G = M.group
    N = M.norm_matrix()
    if i == 0:
        K = invariant_lattice(M)
        return subquotient(K, list(M.relations) + N)[0]
    from .abelian import preimage_lattice
    K = preimage_lattice(N, M.n, M.abelian)
    L = list(M.relations)
    for g in G.generators:
        A = M.matrix(g)
        L += [[A[r][c] - (1 if r == c else 0) for c in range(M.n)] for r in range(M.n)]
    return subquotient(K, L)[0]


def coinvariants(M):
    return coinvariants_group(M)


# Tor against Z[G]_+ and Z[G]_- ------------------------------------------------------------
def _sign_element(G, sign, k):
    """Boundary of the periodic resolution of Z[G]/(1 + sign c) in degree k."""
    e = sign if k % 2 else -sign
    return {G.identity: 1, G.c: e}


def tor_sign(M, sign, i, method="periodic"):
    """Tor_i(M, Z[G]/(1 + sign c)) for sign in {+1, -1} meaning Z[G]_- and Z[G]_+.

    ``sign`` may also be the strings '-' (the quotient by 1 + c) and '+'.
    """
    G = M.group
    if not G.has_conjugation:
        raise TrivialConjugation("Tor against Z[G]_+- needs c != 1")
    s = _sign_code(sign)
    if method == "generic":
        return _tor_generic(M, s, i)
    A_i = M.act(_sign_element(G, s, i)) if i > 0 else None
    A_next = M.act(_sign_element(G, s, i + 1))
    return homology(A_next, A_i, M.abelian, M.abelian)[0]


def _sign_code(sign):
    if sign in ("-", -1):
        return 1   # quotient by 1 + c
    if sign in ("+", 1):
        return -1  # quotient by 1 - c
    raise ValueError("sign must be '+' or '-'")


def _permute(G, v, g, r):
    """g * v for v in Z[G]^r written as r blocks of |G| coefficients."""
    N = G.order
    out = [0] * (r * N)
    for b in range(r):
        for a, h in enumerate(G.elements):
            x = v[b * N + a]
            if x:
                out[b * N + G.index(G.add(h, g))] += x
    return out


@lru_cache(maxsize=None)
def free_resolution(G, s, length):
    """Boundaries of a free Z[G]-resolution of Z[G]/(1 + s c), up to P_length.

    Entry k is the list of Z[G]-vectors (blocks of |G| coefficients) giving the
    images of the generators of P_{k+1} in P_k.
    """
    N = G.order
    # augmentation P_0 = Z[G] -> Z[G]/(1 + s c) on orbit coordinates
    reps = G.minus_reps
    rep_index = {r: i for i, r in enumerate(reps)}
    aug = []
    for g in G.elements:
        row = [0] * len(reps)
        if g in rep_index:
            row[rep_index[g]] = 1
        else:
            row[rep_index[G.add(g, G.c)]] = -s
        aug.append(row)
    phi = aug
    r = 1
    boundaries = []
    for _ in range(length):
        ker = Lattice(row_kernel(phi, len(phi)), r * N)
        chosen = []
        span = Lattice([], r * N)
        for b in _candidates(G, ker, r):
            if span.contains(b):
                continue
            chosen.append(b)
            span = Lattice(span.basis + [_permute(G, b, g, r) for g in G.elements], r * N)
            if span.rank == ker.rank and span.contains_lattice(ker):
                break
        boundaries.append(tuple(tuple(b) for b in chosen))
        phi = [_permute(G, b, g, r) for b in chosen for g in G.elements]
        r = len(chosen)
    return tuple(boundaries)


def _candidates(G, ker, r):
    """Kernel basis vectors, shortest first, so small generators are tried early."""
    return sorted(ker.basis, key=lambda v: (sum(1 for x in v if x), sum(abs(x) for x in v)))


def _tensor_boundary(M, chosen, r_prev):
    """P_k (x) M -> P_{k-1} (x) M for generators given as Z[G]-vectors."""
    G = M.group
    N = G.order
    n = M.n
    R = []
    for b in chosen:
        blocks = []
        for j in range(r_prev):
            x = {g: b[j * N + a] for a, g in enumerate(G.elements) if b[j * N + a]}
            blocks.append(M.act(x))
        for i in range(n):
            R.append(sum((blk[i] for blk in blocks), []))
    return R


def _tor_generic(M, s, i):
    G = M.group
    bnd = free_resolution(G, s, i + 1)
    ranks = [1] + [len(b) for b in bnd]
    middle = _sum_group(M, ranks[i])
    D_next = _tensor_boundary(M, bnd[i], ranks[i])
    if i == 0:
        # P_0 (x) M = M and the augmentation is not part of the complex
        return homology(D_next, None, middle, middle)[0]
    D = _tensor_boundary(M, bnd[i - 1], ranks[i - 1])
    target = _sum_group(M, ranks[i - 1])
    return homology(D_next, D, middle, target)[0]


def invariants_equal(A, B):
    return sorted(A.invariants()) == sorted(B.invariants())


def plus_to_module_kernel(M):
    """ker(M_+ -> M, x -> (1 + c) x), which is Tor_1(M, Z[G]_-) for any M."""
    from .abelian import preimage_lattice
    G = M.group
    if not G.has_conjugation:
        raise TrivialConjugation("needs c != 1")
    K = preimage_lattice(M.act({G.identity: 1, G.c: 1}), M.n, M.abelian)
    return subquotient(K, list(M.relations) + M.act({G.identity: 1, G.c: -1}))[0]
