"""Fixed-precision p-adic images of cyclotomic numbers.

Values of characters live in Z[zeta_m].  For p not dividing m we fix one
prime above p by choosing the lexicographically least monic factor g of
Phi_m mod p, Hensel-lift it to g_N mod p^N and send zeta_m to the class of x
in O/p^N = (Z/p^N)[x]/(g_N).
"""
from fractions import Fraction
from functools import lru_cache
import threading

from sympy import ZZ, totient
from sympy.polys.factortools import dup_zz_hensel_lift
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

from .cyclotomic import Cyclotomic, phi_poly, relative_norm
from .errors import NotIntegral, PrecisionExhausted, RamifiedEmbedding

DEFAULT_PRECISION = 64

_lock = threading.Lock()


def vp(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q, p):
    q = Fraction(q)
    return vp(q.numerator, p) - vp(q.denominator, p)


def split_prime(m, p):
    """Return (m', a) with m = p^a * m' and p not dividing m'."""
    a = 0
    while m % p == 0:
        m //= p
        a += 1
    return m, a


class PadicContext:
    """The ring O/p^N for the chosen prime above p in Q(zeta_m), p prime to m."""

    def __init__(self, m, p, N):
        if m % p == 0:
            raise RamifiedEmbedding(f"p = {p} divides the conductor {m}")
        if N < 1:
            raise PrecisionExhausted("precision must be at least one digit")
        self.m = m
        self.p = p
        self.N = N
        self.q = p ** N
        phi = list(reversed(phi_poly(m)))  # high first
        _, factors = gf_factor(gf_from_int_poly(phi, p), p, ZZ)
        factors = sorted([[int(c) % p for c in f] for f, _ in factors])
        least = factors[0]
        if len(factors) == 1:
            lifted = phi
        else:
            rest = factors[1:]
            lifts = dup_zz_hensel_lift(p, phi, [least] + rest, N, ZZ)
            lifted = [int(c) for c in lifts[0]]
        # monic modulus, low first, reduced mod p^N
        self.modulus = tuple(int(c) % self.q for c in reversed(lifted))
        self.degree = len(self.modulus) - 1
        self.residue_factor = tuple(reversed(least))

    def reduce(self, coeffs):
        q = self.q
        f = self.degree
        c = [int(a) % q for a in coeffs]
        mod = self.modulus
        for k in range(len(c) - 1, f - 1, -1):
            top = c[k]
            if top:
                shift = k - f
                for i in range(f):
                    if mod[i]:
                        c[shift + i] = (c[shift + i] - top * mod[i]) % q
            c[k] = 0
        c = c[:f] + [0] * max(0, f - len(c))
        return tuple(c[:f])

    def root_power(self, k):
        k %= self.m
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return self.reduce(coeffs)


@lru_cache(maxsize=None)
def _context(m, p, N):
    return PadicContext(m, p, N)


def padic_context(m, p, N=DEFAULT_PRECISION):
    # the branch table is built once per key; the lock keeps the first build single
    with _lock:
        return _context(m, p, N)


class PAdicElement:
    """A residue class in O/p^N, stored on the power basis of x mod g_N."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = ctx.reduce(coeffs)

    @property
    def p(self):
        return self.ctx.p

    @property
    def precision(self):
        return self.ctx.N

    def _check(self, other):
        if isinstance(other, int):
            return PAdicElement(self.ctx, [other])
        if not isinstance(other, PAdicElement) or other.ctx is not self.ctx:
            raise ValueError("p-adic elements from different contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        return PAdicElement(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return PAdicElement(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return PAdicElement(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        f = self.ctx.degree
        prod = [0] * (2 * f - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return PAdicElement(self.ctx, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = PAdicElement(self.ctx, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Smallest p-adic valuation of a coordinate; None when zero mod p^N."""
        vals = [vp(a, self.ctx.p) for a in self.coeffs if a]
        return min(vals) if vals else None

    def __eq__(self, other):
        if isinstance(other, int):
            other = PAdicElement(self.ctx, [other])
        return isinstance(other, PAdicElement) and self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.m, self.ctx.p, self.ctx.N, self.coeffs))

    def __repr__(self):
        return f"PAdicElement(p={self.p}, N={self.precision}, {list(self.coeffs)})"


def _unramified_part(x, p):
    m2, a = split_prime(x.m, p)
    if a == 0:
        return x
    y = x.descend(m2)
    if y is None:
        raise RamifiedEmbedding(
            f"value in Q(zeta_{x.m}) does not lie in the unramified subfield Q(zeta_{m2}) at p = {p}")
    return y


def embed_padic(x, p, N=DEFAULT_PRECISION):
    """Image of a cyclotomic number in O/p^N for the fixed prime above p."""
    if isinstance(x, (int, Fraction)):
        x = Cyclotomic.from_rational(1, x)
    x = _unramified_part(x, p)
    ctx = padic_context(x.m, p, N)
    if x.den % p == 0:
        raise NotIntegral(f"denominator {x.den} is divisible by {p}")
    inv = pow(x.den, -1, ctx.q)
    coeffs = [(a * inv) for a in x.num]
    return PAdicElement(ctx, coeffs)


def padic_valuation(y, p):
    """Valuation of y at the fixed prime above p, normalised so v(p) = 1.

    Ramified conductors are handled by taking the relative norm down to the
    prime-to-p cyclotomic field, where the prime above p is unramified, and
    dividing by the ramification index.
    """
    if isinstance(y, (int, Fraction)):
        if y == 0:
            return None
        return Fraction(vp_fraction(y, p))
    if y.is_zero():
        return None
    if y.is_rational():
        return Fraction(vp_fraction(y.to_fraction(), p))
    m2, a = split_prime(y.m, p)
    e = int(totient(p ** a)) if a else 1
    z = relative_norm(y, m2) if a else y
    den_val = vp(z.den, p)
    N = 16
    while True:
        ctx = padic_context(z.m, p, N)
        v = PAdicElement(ctx, z.num).valuation()
        if v is not None:
            return Fraction(v - den_val, e)
        N *= 2
