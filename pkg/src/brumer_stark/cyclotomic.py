"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element is stored as an integer numerator vector in the power basis
1, z, ..., z^(phi(m)-1) modulo the m-th cyclotomic polynomial, together with
a positive common denominator.  The power basis is an integral basis of
Z[zeta_m], so integrality is a denominator test.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import cyclotomic_poly, totient

from .intlinalg import rational_solve_rows


@lru_cache(maxsize=None)
def phi_poly(m):
    """Coefficients of Phi_m, constant term first."""
    coeffs = cyclotomic_poly(m, polys=True).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def reduction_table(m):
    """Row k holds the power-basis coordinates of z^k for 0 <= k < m."""
    phi = phi_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z and reduce with the monic Phi_m
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for i in range(deg):
                nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


def _normalize(num, den):
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


class Cyclotomic:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "num", "den", "_key")

    def __init__(self, m, num, den=1, _normalized=False):
        if not _normalized:
            num, den = _normalize(list(num), den)
        self.m = m
        self.num = num
        self.den = den
        self._key = None

    # construction -------------------------------------------------------
    @classmethod
    def from_rational(cls, m, q):
        q = Fraction(q)
        deg = int(totient(m))
        num = [0] * deg
        num[0] = q.numerator
        return cls(m, num, q.denominator)

    @classmethod
    def zeta(cls, m, k=1):
        return cls.from_bins(m, {k % m: 1})

    @classmethod
    def from_bins(cls, m, bins, den=1):
        """Build sum_k bins[k] z^k; bins is a dict or a sequence indexed mod m."""
        table = reduction_table(m)
        deg = len(table[0])
        num = [0] * deg
        items = bins.items() if isinstance(bins, dict) else enumerate(bins)
        for k, b in items:
            if b:
                row = table[k % m]
                for i in range(deg):
                    if row[i]:
                        num[i] += b * row[i]
        return cls(m, num, den)

    def bins(self):
        """Numerator as a length-m coefficient list (power basis embedded)."""
        out = [0] * self.m
        out[:len(self.num)] = self.num
        return out

    # basic predicates -----------------------------------------------------
    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def is_integral(self):
        return self.den == 1

    # conductor changes ----------------------------------------------------
    def lift(self, M):
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot lift from conductor {self.m} to {M}")
        step = M // self.m
        return Cyclotomic.from_bins(M, {(j * step) % M: a for j, a in enumerate(self.num) if a}, self.den)

    def descend(self, m2):
        """The same number viewed in Q(zeta_m2), or None if it is not there."""
        if m2 == self.m:
            return self
        if self.m % m2:
            raise ValueError(f"{m2} does not divide {self.m}")
        basis = _lifted_basis(m2, self.m)
        sol = rational_solve_rows(basis, self.num)
        if sol is None:
            return None
        den = 1
        for q in sol:
            den = den * q.denominator // gcd(den, q.denominator)
        num = [int(q * den) for q in sol]
        return Cyclotomic(m2, num, den * self.den)

    def _common(self, other):
        if isinstance(other, Cyclotomic):
            if other.m == self.m:
                return self, other
            M = self.m * other.m // gcd(self.m, other.m)
            return self.lift(M), other.lift(M)
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.from_rational(self.m, other)
        return None, None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return Cyclotomic(a.m, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, tuple(-a for a in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        num = [x * b.den - y * a.den for x, y in zip(a.num, b.num)]
        return Cyclotomic(a.m, num, a.den * b.den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.m, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            return Cyclotomic(self.m, [a * other.numerator for a in self.num],
                              self.den * other.denominator)
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        deg = len(a.num)
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        if len(prod) > deg:
            table = reduction_table(a.m)
            low = prod[:deg]
            for k in range(deg, len(prod)):
                c = prod[k]
                if c:
                    row = table[k % a.m]
                    for i in range(deg):
                        if row[i]:
                            low[i] += c * row[i]
            prod = low
        return Cyclotomic(a.m, prod, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.m, [a * other.denominator for a in self.num],
                              self.den * other.numerator)
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.from_rational(self.m, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k):
        """Apply the automorphism z -> z^k (k prime to m)."""
        if gcd(k, self.m) != 1:
            raise ValueError("Galois exponent must be prime to the conductor")
        return Cyclotomic.from_bins(self.m, {(j * k) % self.m: a for j, a in enumerate(self.num) if a}, self.den)

    def conj(self):
        return self.galois(-1)

    def norm(self):
        """Absolute norm to Q."""
        out = Cyclotomic.from_rational(self.m, 1)
        for k in range(1, self.m + 1):
            if gcd(k, self.m) == 1:
                out = out * self.galois(k)
        return out.to_fraction()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # x^-1 = (product of the other conjugates) / norm
        others = Cyclotomic.from_rational(self.m, 1)
        for k in range(2, self.m + 1):
            if gcd(k, self.m) == 1:
                others = others * self.galois(k)
        n = (self * others).to_fraction()
        return others / n

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.num == b.num and a.den == b.den

    def minimal(self):
        """The same number in the smallest Q(zeta_d) containing it."""
        if self._key is None:
            best = self
            for d in sorted(_divisors(self.m)):
                if d == self.m:
                    break
                y = self.descend(d)
                if y is not None:
                    best = y
                    break
            self._key = (best.m, best.num, best.den)
        return self._key

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash(self.minimal())

    def __repr__(self):
        terms = []
        for j, a in enumerate(self.num):
            if not a:
                continue
            if j == 0:
                terms.append(f"{a}")
            elif j == 1:
                terms.append(f"{a}*z{self.m}")
            else:
                terms.append(f"{a}*z{self.m}^{j}")
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            return f"({body})/{self.den}"
        return body


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _lifted_basis(m2, m):
    step = m // m2
    deg = int(totient(m2))
    rows = []
    for j in range(deg):
        rows.append(list(Cyclotomic.zeta(m, j * step).num))
    return tuple(tuple(r) for r in rows)


def relative_norm(x, m2):
    """Norm from Q(zeta_m) down to Q(zeta_m2), returned in conductor m2."""
    m = x.m
    out = Cyclotomic.from_rational(m, 1)
    for k in range(1, m + 1):
        if gcd(k, m) == 1 and (k - 1) % m2 == 0:
            out = out * x.galois(k)
    y = out.descend(m2)
    if y is None:
        raise ArithmeticError("relative norm failed to descend")
    return y
