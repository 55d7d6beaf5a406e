"""Finitely generated abelian groups given by generators and relations."""
from .intlinalg import Lattice, hnf, row_kernel, smith_form, vec_mat


class AbelianGroup:
    """Z^n modulo the lattice spanned by the relation rows.

    ``orders`` lists the invariant factors of the quotient in divisibility
    order, with 0 standing for a copy of Z.  ``coords`` maps a vector of Z^n
    to canonical coordinates in that decomposition.
    """

    def __init__(self, ngens, relations=()):
        self.ngens = ngens
        self.relations = [list(r) for r in relations if any(r)]
        diag, V, Vi = smith_form(self.relations, len(self.relations), ngens)
        d = list(diag) + [0] * (ngens - len(diag))
        self._V = V
        self._Vi = Vi
        self._keep = [i for i in range(ngens) if d[i] != 1]
        self.orders = [d[i] for i in self._keep]

    @property
    def torsion(self):
        return [d for d in self.orders if d]

    @property
    def free_rank(self):
        return sum(1 for d in self.orders if d == 0)

    def invariants(self):
        """Torsion invariant factors followed by one 0 per free summand."""
        return list(self.orders)

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if not self.is_finite():
            return float("inf")
        out = 1
        for d in self.orders:
            out *= d
        return out

    def is_trivial(self):
        return not self.orders

    def coords(self, v):
        w = vec_mat(v, self._V, self.ngens)
        return tuple(w[i] % d if d else w[i] for i, d in zip(self._keep, self.orders))

    def is_zero(self, v):
        return not any(self.coords(v))

    def generator(self, i):
        """The i-th canonical generator as a vector in Z^n."""
        return list(self._Vi[self._keep[i]])

    def from_coords(self, c):
        out = [0] * self.ngens
        for ci, i in zip(c, self._keep):
            if ci:
                row = self._Vi[i]
                for k in range(self.ngens):
                    if row[k]:
                        out[k] += ci * row[k]
        return out

    def __repr__(self):
        return f"AbelianGroup({self.invariants()})"


def invariants_of(ngens, relations):
    return AbelianGroup(ngens, relations).invariants()


def preimage_lattice(F, nsrc, target):
    """{x in Z^nsrc : x*F lies in the relation lattice of target}."""
    ntgt = target.ngens
    if nsrc == 0:
        return Lattice([], 0)
    if ntgt == 0:
        return Lattice([[1 if i == j else 0 for j in range(nsrc)] for i in range(nsrc)], nsrc)
    stacked = [list(r) for r in F] + [list(r) for r in target.relations]
    ker = row_kernel(stacked, len(stacked))
    return Lattice([row[:nsrc] for row in ker], nsrc)


def subquotient(K, L_rows):
    """The group K / L for lattices L <= K in Z^n.

    Returns (group, basis) where the group is presented on the Hermite basis
    of K and ``basis`` lists those basis vectors.
    """
    rels = []
    for v in L_rows:
        if not any(v):
            continue
        c = K.coords(v)
        if c is None:
            raise ValueError("relation lattice is not contained in the ambient lattice")
        rels.append(c)
    return AbelianGroup(K.rank, rels), K.basis


class Hom:
    """A homomorphism of presented groups given by its matrix on generators."""

    def __init__(self, src, dst, matrix):
        self.src = src
        self.dst = dst
        self.matrix = [list(r) for r in matrix]

    def __call__(self, v):
        return vec_mat(v, self.matrix, self.dst.ngens)

    def is_well_defined(self):
        rel_lattice = Lattice(self.dst.relations, self.dst.ngens)
        return all(rel_lattice.contains(self(r)) for r in self.src.relations)

    def kernel(self):
        K = preimage_lattice(self.matrix, self.src.ngens, self.dst)
        return subquotient(K, self.src.relations)

    def cokernel(self):
        rows = list(self.dst.relations) + [r for r in self.matrix if any(r)]
        return AbelianGroup(self.dst.ngens, rows)

    def image(self):
        K = preimage_lattice(self.matrix, self.src.ngens, self.dst)
        return AbelianGroup(self.src.ngens, K.basis)

    def is_injective(self):
        return self.kernel()[0].is_trivial()

    def is_surjective(self):
        return self.cokernel().is_trivial()

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    def compose(self, other):
        """self after other."""
        from .intlinalg import mat_mul
        return Hom(other.src, self.dst, mat_mul(other.matrix, self.matrix))


def homology(F, G, middle, target):
    """ker(G) / im(F) at ``middle`` for maps given as matrices.

    F has rows in Z^middle.ngens (images of the previous generators), G maps
    middle generators into target.  Returns (group, basis of the kernel
    lattice) so that elements can be converted to canonical coordinates.
    """
    K = preimage_lattice(G, middle.ngens, target) if G is not None else Lattice(
        [[1 if i == j else 0 for j in range(middle.ngens)] for i in range(middle.ngens)],
        middle.ngens)
    L_rows = [list(r) for r in middle.relations] + [list(r) for r in (F or []) if any(r)]
    return subquotient(K, L_rows)


def lattice_sum(rows_a, rows_b, n):
    return Lattice(list(rows_a) + list(rows_b), n)


def hermite(rows, n):
    return hnf(rows, n)[0]
