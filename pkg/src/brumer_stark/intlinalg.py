"""Exact integer linear algebra on lists of lists.

Vectors are rows and matrices act on the right (v -> v*A), so the lattice
spanned by a matrix is the span of its rows.
"""
from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def mat_mul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(n):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def vec_mat(v, A, ncols=None):
    if ncols is None:
        ncols = len(A[0]) if A else 0
    acc = [0] * ncols
    for k, a in enumerate(v):
        if a:
            row = A[k]
            for j in range(ncols):
                b = row[j]
                if b:
                    acc[j] += a * b
    return acc


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def _axpy(dst, src, q):
    """dst -= q*src, in place."""
    for k, s in enumerate(src):
        if s:
            dst[k] -= q * s


def hnf(rows, ncols, transform=False):
    """Row Hermite normal form.

    Returns (H, pivots, T) where H holds the nonzero rows (pivots positive,
    entries above each pivot reduced into [0, pivot)), pivots are the pivot
    columns, and T is a unimodular matrix with T*A = H stacked over zero rows
    (only when transform is set; its trailing rows span the left kernel).
    """
    A = [list(r) for r in rows]
    m = len(A)
    T = identity(m) if transform else None
    r = 0
    pivots = []
    for j in range(ncols):
        if r == m:
            break
        found = False
        while True:
            best = -1
            for i in range(r, m):
                a = A[i][j]
                if a and (best < 0 or abs(a) < abs(A[best][j])):
                    best = i
            if best < 0:
                break
            found = True
            if best != r:
                A[r], A[best] = A[best], A[r]
                if T is not None:
                    T[r], T[best] = T[best], T[r]
            p = A[r][j]
            clean = True
            for i in range(r + 1, m):
                a = A[i][j]
                if a:
                    q = a // p
                    _axpy(A[i], A[r], q)
                    if T is not None:
                        _axpy(T[i], T[r], q)
                    if A[i][j]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if A[r][j] < 0:
            A[r] = [-x for x in A[r]]
            if T is not None:
                T[r] = [-x for x in T[r]]
        p = A[r][j]
        for i in range(r):
            q = A[i][j] // p
            if q:
                _axpy(A[i], A[r], q)
                if T is not None:
                    _axpy(T[i], T[r], q)
        pivots.append(j)
        r += 1
    return A[:r], pivots, T


def row_kernel(A, nrows=None):
    """Basis of the integer left kernel {x : x*A = 0}."""
    m = len(A) if nrows is None else nrows
    if m == 0:
        return []
    ncols = len(A[0]) if A else 0
    if ncols == 0:
        return identity(m)
    H, _, T = hnf(A, ncols, transform=True)
    return [row for row in T[len(H):]]


class Lattice:
    """A sublattice of Z^n stored by its Hermite basis."""

    def __init__(self, rows, n):
        self.n = n
        self.basis, self.pivots, _ = hnf(rows, n)

    @property
    def rank(self):
        return len(self.basis)

    def coords(self, v):
        """Integer coordinates of v in the Hermite basis, or None."""
        w = list(v)
        c = []
        for row, j in zip(self.basis, self.pivots):
            a = w[j]
            if a % row[j]:
                return None
            q = a // row[j]
            c.append(q)
            if q:
                _axpy(w, row, q)
        if any(w):
            return None
        return c

    def contains(self, v):
        return self.coords(v) is not None

    def contains_lattice(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, tuple(map(tuple, self.basis))))

    def index_in(self, other):
        """[other : self] for lattices of equal rank with self inside other."""
        if self.rank != other.rank:
            raise ValueError("lattices of different rank have infinite index")
        return _general_index(self, other)


def _general_index(sub, sup):
    coords = [sup.coords(v) for v in sub.basis]
    diag, _, _ = smith_form(coords, sub.rank, sup.rank)
    out = 1
    for d in diag:
        out *= d
    return abs(out)


def smith_form(A, m=None, n=None):
    """Smith normal form with column transforms.

    Returns (diag, V, Vinv) with U*A*V = D for some unimodular U, where diag
    lists the min(m, n) diagonal entries (nonnegative, each dividing the
    next, zeros last) and Vinv is the inverse of V.
    """
    m = len(A) if m is None else m
    n = (len(A[0]) if A else 0) if n is None else n
    M = [list(r) for r in A]
    V = identity(n)
    Vi = identity(n)

    def swap_cols(a, b):
        if a == b:
            return
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def col_sub(j, t, q):
        # column j -= q * column t
        for row in M:
            if row[t]:
                row[j] -= q * row[t]
        for row in V:
            if row[t]:
                row[j] -= q * row[t]
        rj = Vi[j]
        rt = Vi[t]
        for k in range(n):
            if rj[k]:
                rt[k] += q * rj[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        swap_cols(t, j)
        while True:
            p = M[t][t]
            for i in range(t + 1, m):
                a = M[i][t]
                if a:
                    _axpy(M[i], M[t], a // p)
            for j in range(t + 1, n):
                a = M[t][j]
                if a:
                    col_sub(j, t, a // p)
            small = None
            for i in range(t + 1, m):
                a = M[i][t]
                if a and (small is None or abs(a) < small[0]):
                    small = (abs(a), i, None)
            for j in range(t + 1, n):
                a = M[t][j]
                if a and (small is None or abs(a) < small[0]):
                    small = (abs(a), None, j)
            if small is not None:
                _, i, j = small
                if i is not None:
                    M[t], M[i] = M[i], M[t]
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = M[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            M[t] = [x + y for x, y in zip(M[t], M[bad])]
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
        t += 1
    diag = [M[i][i] if i < t else 0 for i in range(min(m, n))]
    return diag, V, Vi


def rank_rational(A, ncols):
    H, _, _ = hnf(A, ncols)
    return len(H)


def rational_solve_rows(rows, v):
    """Find rational c with c*rows = v, or None when v is outside the span."""
    m = len(rows)
    n = len(v)
    # Solve rows^T c = v by Gaussian elimination on the transposed system.
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(v[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for col in range(m):
        pr = None
        for i in range(r, n):
            if aug[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, n):
        if aug[i][m] != 0:
            return None
    c = [Fraction(0)] * m
    for i, col in enumerate(piv_cols):
        c[col] = aug[i][m]
    return c
