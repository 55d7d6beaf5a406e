"""Finitely presented modules over group rings and their Fitting ideals.

A presentation lists relations as rows: row i is the relation
sum_j a_ij e_j = 0 on the generators e_1, ..., e_r.  Entries are
GroupRingElement or MinusElement values over a common ring.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, inf

from .errors import NotQuadratic, NotSubgroup, PrecisionExhausted, RingMismatch
from .group_ring import GroupRingElement, MinusElement, minus_project
from .intlinalg import rank_rational, smith_form
from .padic import DEFAULT_PRECISION, padic_valuation, vp

DEFAULT_GUARD = 8


@dataclass
class Presentation:
    group: object
    ngens: int
    relations: list
    minus: bool = False
    ring: object = None

    def __post_init__(self):
        self.relations = [list(row) for row in self.relations]
        for row in self.relations:
            if len(row) != self.ngens:
                raise ValueError("relation row has the wrong length")
            for a in row:
                self._check_entry(a)
        if self.ring is None:
            self.ring = self.relations[0][0].ring if self.relations and self.ngens else None

    def _check_entry(self, a):
        kind = MinusElement if self.minus else GroupRingElement
        if not isinstance(a, kind) or a.group != self.group:
            raise RingMismatch(f"entry {a!r} is not in the presentation's ring")
        if self.ring is not None and a.ring != self.ring:
            raise RingMismatch(f"entry over {a.ring}, presentation over {self.ring}")

    @property
    def nrels(self):
        return len(self.relations)

    @property
    def is_quadratic(self):
        return self.nrels == self.ngens

    def zero(self):
        kind = MinusElement if self.minus else GroupRingElement
        return kind.zero(self.group, self.ring)

    def one(self):
        kind = MinusElement if self.minus else GroupRingElement
        return kind.one(self.group, self.ring)

    def basis(self):
        """Elements of the ring that form a basis over the coefficients."""
        G = self.group
        if self.minus:
            return [minus_project(GroupRingElement.basis(G, r, self.ring)) for r in G.minus_reps]
        return [GroupRingElement.basis(G, g, self.ring) for g in G.elements]


@dataclass
class IdealGens:
    gens: list
    group: object
    minus: bool
    ring: object

    def is_zero(self):
        return all(g.is_zero() for g in self.gens)


def presentation(group, matrix, minus=False, ring=None):
    """Build a presentation from a matrix whose rows are relations."""
    matrix = [list(r) for r in matrix]
    ngens = len(matrix[0]) if matrix else 0
    return Presentation(group, ngens, matrix, minus, ring)


def free_presentation(group, ngens, minus=False, ring=None):
    return Presentation(group, ngens, [], minus, ring)


# determinants ----------------------------------------------------------------
def _det_laplace(M, zero, one):
    """Subset expansion: D[mask] = det of the leading rows on the columns in mask."""
    n = len(M)
    D = {0: one}
    for i in range(n):
        nxt = {}
        for mask, val in D.items():
            if val.is_zero():
                continue
            sign_count = 0
            for j in range(n - 1, -1, -1):
                if mask >> j & 1:
                    sign_count += 1
                    continue
                a = M[i][j]
                if a.is_zero():
                    continue
                term = val * a
                if sign_count % 2:
                    term = -term
                key = mask | (1 << j)
                nxt[key] = nxt[key] + term if key in nxt else term
        D = nxt
    return D.get((1 << n) - 1, zero)


def _det_berkowitz(M, zero, one):
    """Division-free characteristic polynomial method; valid over any commutative ring."""
    n = len(M)
    if n == 0:
        return one
    vect = [one, -M[0][0]]
    for r in range(1, n):
        R = [M[r][j] for j in range(r)]
        C = [M[i][r] for i in range(r)]
        A = [row[:r] for row in M[:r]]
        a = M[r][r]
        Ak = C
        quantities = []
        for _ in range(r):
            quantities.append(sum((x * y for x, y in zip(R, Ak)), zero))
            Ak = [sum((A[i][j] * Ak[j] for j in range(r)), zero) for i in range(r)]
        toeplitz_col = [one, -a] + [-q for q in quantities]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i + 1, len(vect))):
                k = i - j
                if k < len(toeplitz_col):
                    s = s + toeplitz_col[k] * vect[j]
            new.append(s)
        vect = new
    det = vect[-1]
    return det if n % 2 == 0 else -det


def ring_det(M, zero, one):
    if len(M) <= 6:
        return _det_laplace(M, zero, one)
    return _det_berkowitz(M, zero, one)


def fitting_ideal(P):
    """Zeroth Fitting ideal: all maximal minors of the relation matrix."""
    zero, one = P.zero(), P.one()
    r, s = P.ngens, P.nrels
    ideal = IdealGens([], P.group, P.minus, P.ring)
    if r == 0:
        ideal.gens = [one]
    elif s < r:
        ideal.gens = [zero]
    else:
        for rows in combinations(range(s), r):
            ideal.gens.append(ring_det([P.relations[i] for i in rows], zero, one))
    return ideal


def principal(x):
    return IdealGens([x], x.group, isinstance(x, MinusElement), x.ring)


def ideal_product(A, B):
    return IdealGens([a * b for a in A.gens for b in B.gens], A.group, A.minus, A.ring)


def fitting_generator(P):
    if not P.is_quadratic:
        raise NotQuadratic(f"{P.nrels} relations on {P.ngens} generators")
    return fitting_ideal(P).gens[0]


# ideal comparison -------------------------------------------------------------
def _span_rows(ideal, basis):
    rows = []
    for g in ideal.gens:
        for b in basis:
            rows.append([Fraction(x) for x in (g * b).coeffs])
    return rows


def _clear_denominators(rows, p):
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        if den % p == 0:
            raise ValueError(f"ideal generator is not {p}-integral")
        out.append([int(x * den) for x in row])
    return out


def padic_profile(rows, ncols, p, precision=DEFAULT_PRECISION, guard=DEFAULT_GUARD, exact_rank=None):
    """(rank, sum of elementary-divisor valuations) of a Z_p-lattice given by rows.

    Elimination with minimal-valuation pivots modulo p^N; every division by
    a pivot of valuation v costs v digits.  A pivot inside the guard band
    raises PrecisionExhausted.
    """
    q = p ** precision
    M = [[x % q for x in row] for row in rows if any(x % q for x in row)]
    cap = precision
    vals = []
    while M:
        best = None
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if x:
                    v = vp(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        if v >= cap - guard:
            raise PrecisionExhausted(
                f"pivot of valuation {v} within {guard} digits of the working precision {cap}")
        vals.append(v)
        piv_row = M.pop(i)
        piv = piv_row[j]
        unit_inv = pow(piv // p ** v, -1, q)
        rest = []
        for row in M:
            x = row[j]
            if x:
                factor = (x // p ** v) * unit_inv % q
                row = [(a - factor * b) % q for a, b in zip(row, piv_row)]
            row = row[:j] + row[j + 1:]
            if any(row):
                rest.append(row)
        cap -= v
        M = rest
    rank = len(vals)
    if exact_rank is not None and exact_rank != rank:
        raise PrecisionExhausted(
            f"found {rank} pivots but the exact rank is {exact_rank}; raise the precision")
    return rank, sum(vals)


def _exact_rank(ideal, rows, ncols):
    if ideal.ring is not None and ideal.ring.kind == "padic":
        return None
    return rank_rational(rows, ncols)


def ideal_compare(A, B, p, precision=DEFAULT_PRECISION, guard=DEFAULT_GUARD):
    """Compare two ideals of Z_p[G] or Z_p[G]_- as Z_p-lattices.

    Returns 'equal', 'A<B' (A strictly inside B), 'B<A' or 'incomparable'.
    """
    if A.group != B.group or A.minus != B.minus:
        raise RingMismatch("ideals live in different rings")
    if A.minus:
        basis = [minus_project(GroupRingElement.basis(A.group, r)) for r in A.group.minus_reps]
    else:
        basis = [GroupRingElement.basis(A.group, g) for g in A.group.elements]
    n = len(basis)

    def rows_of(ideal):
        conv = IdealGens([_as_exact(g) for g in ideal.gens], ideal.group, ideal.minus, None)
        rows = _clear_denominators(_span_rows(conv, [_as_exact(b) for b in basis]), p)
        return rows, _exact_rank(ideal, rows, n)

    ra, ka = rows_of(A)
    rb, kb = rows_of(B)
    exact_sum = None
    if ka is not None and kb is not None:
        exact_sum = rank_rational(ra + rb, n)
    pa = padic_profile(ra, n, p, precision, guard, ka)
    pb = padic_profile(rb, n, p, precision, guard, kb)
    ps = padic_profile(ra + rb, n, p, precision, guard, exact_sum)
    a_in_b = ps == pb
    b_in_a = ps == pa
    if a_in_b and b_in_a:
        return "equal"
    if a_in_b:
        return "A<B"
    if b_in_a:
        return "B<A"
    return "incomparable"


def _as_exact(x):
    """Rational copy of x; p-adic coefficients are taken in the symmetric range."""
    from .group_ring import QQ
    if x.ring is not None and x.ring.kind == "padic":
        q = x.ring.modulus
        coeffs = [c - q if c > q // 2 else c for c in x.coeffs]
    else:
        coeffs = x.coeffs
    return type(x)(x.group, coeffs, QQ)


# sizes --------------------------------------------------------------------------
def module_size(x, chars, p, precision=DEFAULT_PRECISION, guard=DEFAULT_GUARD):
    """#(Z_p / prod_psi psi(x)), or inf when some psi(x) vanishes."""
    exact = _as_exact(x)
    total = Fraction(0)
    for chi in chars:
        y = exact.evaluate(chi) if isinstance(exact, GroupRingElement) else exact.lift().evaluate(chi)
        if y.is_zero():
            return inf
        v = padic_valuation(y, p)
        if x.ring is not None and x.ring.kind == "padic" and v >= x.ring.precision - guard:
            raise PrecisionExhausted(f"character value of valuation {v} is inside the guard band")
        total += v
    if total.denominator != 1:
        raise ValueError("character set is not Galois stable: valuation sum is not an integer")
    return p ** int(total)


def _multiplication_block(a, basis):
    return [list(_as_exact(b * a).coeffs) for b in basis]


def integer_relations(P):
    """Relations of the presented module as a Z-module on r * rank generators."""
    basis = P.basis()
    d = len(basis)
    rows = []
    for rel in P.relations:
        blocks = [_multiplication_block(a, basis) for a in rel]
        for k in range(d):
            row = []
            for blk in blocks:
                row.extend(blk[k])
            rows.append(row)
    return rows, P.ngens * d


def brute_force_order(P, p=None):
    """Order of the presented module from the Smith form over Z (p-part if p given)."""
    rows, n = integer_relations(P)
    rows = [[int(x) for x in r] for r in rows]
    if n == 0:
        return 1
    diag, _, _ = smith_form(rows, len(rows), n)
    diag = list(diag) + [0] * (n - len(diag))
    if any(d == 0 for d in diag):
        return inf
    out = 1
    for d in diag:
        if p is None:
            out *= d
        else:
            out *= p ** vp(d, p)
    return out


# constructions --------------------------------------------------------------------
def jannsen_transpose(P):
    """Transpose the relation matrix and apply the involution to every entry."""
    if not P.relations:
        return Presentation(P.group, 0, [[] for _ in range(P.ngens)], P.minus, P.ring)
    cols = [[P.relations[i][j].sharp() for i in range(P.nrels)] for j in range(P.ngens)]
    return Presentation(P.group, P.nrels, cols, P.minus, P.ring)


def direct_sum(P, Q):
    if P.group != Q.group or P.minus != Q.minus:
        raise RingMismatch("presentations over different rings")
    ring = P.ring or Q.ring
    zp = P.zero() if P.ring else Q.zero()
    rows = [row + [zp] * Q.ngens for row in P.relations]
    rows += [[zp] * P.ngens + row for row in Q.relations]
    return Presentation(P.group, P.ngens + Q.ngens, rows, P.minus, ring)


def coinvariants(P, subgroup_gens):
    """The presentation of the H'-coinvariants over Z[G/H'] (or its minus part)."""
    G = P.group
    for h in subgroup_gens:
        if len(h) != G.rank:
            raise NotSubgroup(f"{h} is not an element of {G}")
    qmap = G.quotient(subgroup_gens)
    rows = []
    for row in P.relations:
        new = []
        for a in row:
            lifted = a.lift() if P.minus else a
            image = lifted.pushforward(qmap)
            new.append(minus_project(image) if P.minus else image)
        if any(not x.is_zero() for x in new):
            rows.append(new)
    # relations (h - 1) e_i become zero in the quotient and are omitted
    return Presentation(qmap.target, P.ngens, rows, P.minus, P.ring), qmap


def _element(G, terms, minus, ring):
    a = GroupRingElement.from_dict(G, terms, ring)
    return minus_project(a) if minus else a


def archimedean_block(G, minus=True, ring=None):
    """The 1x1 block 2, appended when an archimedean place moves into T."""
    from .group_ring import ZZ
    ring = ring or ZZ
    return Presentation(G, 1, [[_element(G, {G.identity: 2}, minus, ring)]], minus, ring)


def depletion_block(G, frobenius, minus=True, ring=None):
    """The 1x1 block sigma - 1."""
    from .group_ring import ZZ
    ring = ring or ZZ
    terms = {frobenius: 1}
    terms[G.identity] = terms.get(G.identity, 0) - 1
    return Presentation(G, 1, [[_element(G, terms, minus, ring)]], minus, ring)


def smoothing_block(G, frobenius, norm, minus=True, ring=None):
    """The 1x1 block sigma - N(v)."""
    from .group_ring import ZZ
    ring = ring or ZZ
    terms = {frobenius: 1}
    terms[G.identity] = terms.get(G.identity, 0) - norm
    return Presentation(G, 1, [[_element(G, terms, minus, ring)]], minus, ring)
