"""Group rings Z[G], Q[G], Z_p[G], the minus quotient Z[G]/(1+c) and
character images."""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclotomic
from .errors import (NotDivisible, NotIntegral, PrecisionExhausted, RingMismatch,
                     TrivialConjugation)
from .padic import DEFAULT_PRECISION, embed_padic, split_prime, vp


@dataclass(frozen=True)
class BaseRing:
    """Coefficient ring: 'integers', 'rationals' or 'padic' (p, precision)."""

    kind: str
    p: int = None
    precision: int = None

    @property
    def modulus(self):
        return self.p ** self.precision if self.kind == "padic" else None

    def normalize(self, a):
        if self.kind == "integers":
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise RingMismatch(f"{a} is not an integer")
                return a.numerator
            return int(a)
        if self.kind == "rationals":
            return Fraction(a)
        q = self.modulus
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise NotIntegral(f"{a} is not {self.p}-integral")
            return a.numerator * pow(a.denominator, -1, q) % q
        return int(a) % q

    def __str__(self):
        if self.kind == "padic":
            return f"Z_{self.p} (precision {self.precision})"
        return "Z" if self.kind == "integers" else "Q"


ZZ = BaseRing("integers")
QQ = BaseRing("rationals")


def padic_ring(p, precision=DEFAULT_PRECISION):
    return BaseRing("padic", p, precision)


class GroupRingElement:
    """sum_g a_g g with coefficients indexed by the group's element order."""

    __slots__ = ("group", "ring", "coeffs")

    def __init__(self, group, coeffs, ring=ZZ):
        if len(coeffs) != group.order:
            raise ValueError("coefficient vector has the wrong length")
        self.group = group
        self.ring = ring
        self.coeffs = tuple(ring.normalize(a) for a in coeffs)

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, group, ring=ZZ):
        return cls(group, [0] * group.order, ring)

    @classmethod
    def one(cls, group, ring=ZZ):
        return cls.basis(group, group.identity, ring)

    @classmethod
    def basis(cls, group, g, ring=ZZ):
        c = [0] * group.order
        c[group.index(g)] = 1
        return cls(group, c, ring)

    @classmethod
    def from_dict(cls, group, terms, ring=ZZ):
        c = [0] * group.order
        for g, a in terms.items():
            c[group.index(g)] += a
        return cls(group, c, ring)

    def to_dict(self):
        return {g: a for g, a in zip(self.group.elements, self.coeffs) if a}

    def coefficient(self, g):
        return self.coeffs[self.group.index(g)]

    def change_ring(self, ring):
        return GroupRingElement(self.group, self.coeffs, ring)

    # arithmetic -----------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, GroupRingElement):
            raise RingMismatch("expected a group ring element")
        if other.group != self.group or other.ring != self.ring:
            raise RingMismatch(f"{self.ring} over {self.group} vs {other.ring} over {other.group}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElement.one(self.group, self.ring) * other
        self._same(other)
        return GroupRingElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, [-a for a in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(self.group, [a * other for a in self.coeffs], self.ring)
        self._same(other)
        table = self.group.mult_table
        out = [0] * self.group.order
        nz = [(j, b) for j, b in enumerate(other.coeffs) if b]
        for i, a in enumerate(self.coeffs):
            if a:
                row = table[i]
                for j, b in nz:
                    out[row[j]] += a * b
        return GroupRingElement(self.group, out, self.ring)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElement.one(self.group, self.ring) * other
        return (isinstance(other, GroupRingElement) and self.group == other.group
                and self.ring == other.ring and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group, self.ring, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def augmentation(self):
        return sum(self.coeffs)

    def sharp(self):
        G = self.group
        out = [0] * G.order
        for g, a in zip(G.elements, self.coeffs):
            if a:
                out[G.index(G.neg(g))] = a
        return GroupRingElement(G, out, self.ring)

    def pushforward(self, qmap):
        """Image under Z[G] -> Z[G/K] for a QuotientMap."""
        T = qmap.target
        out = [0] * T.order
        for g, a in zip(self.group.elements, self.coeffs):
            if a:
                out[T.index(qmap(g))] += a
        return GroupRingElement(T, out, self.ring)

    def is_integral(self):
        return all(Fraction(a).denominator == 1 for a in self.coeffs)

    def evaluate(self, chi):
        """chi(a) as an exact cyclotomic number (integer representatives for Z_p)."""
        m = chi.m
        bins = [0] * m
        den = 1
        for a in self.coeffs:
            if isinstance(a, Fraction):
                den = den * a.denominator // gcd(den, a.denominator)
        for g, a in zip(self.group.elements, self.coeffs):
            if a:
                bins[chi.exp_at(g)] += int(a * den)
        return Cyclotomic.from_bins(m, bins, den)

    def minus(self):
        return minus_project(self)

    def __repr__(self):
        return f"GroupRingElement({_format_terms(self.group, self.group.elements, self.coeffs)}; {self.ring})"


def _format_terms(G, elements, coeffs):
    parts = []
    for g, a in zip(elements, coeffs):
        if not a:
            continue
        if g == G.identity:
            parts.append(f"{a}")
        elif g == G.c:
            parts.append(f"{a}*c")
        else:
            parts.append(f"{a}*{list(g)}")
    return " + ".join(parts) if parts else "0"


class MinusElement:
    """An element of Z[G]_- on the orbit basis of G/<c> (c acts by -1)."""

    __slots__ = ("group", "ring", "coeffs")

    def __init__(self, group, coeffs, ring=ZZ):
        if not group.has_conjugation:
            raise TrivialConjugation("the minus quotient needs c != 1")
        if len(coeffs) != len(group.minus_reps):
            raise ValueError("coefficient vector has the wrong length")
        self.group = group
        self.ring = ring
        self.coeffs = tuple(ring.normalize(a) for a in coeffs)

    @classmethod
    def zero(cls, group, ring=ZZ):
        return cls(group, [0] * len(group.minus_reps), ring)

    @classmethod
    def one(cls, group, ring=ZZ):
        return minus_project(GroupRingElement.one(group, ring))

    @classmethod
    def scalar(cls, group, a, ring=ZZ):
        return cls.one(group, ring) * a

    def lift(self):
        G = self.group
        out = [0] * G.order
        for r, a in zip(G.minus_reps, self.coeffs):
            out[G.index(r)] = a
        return GroupRingElement(G, out, self.ring)

    def _same(self, other):
        if not isinstance(other, MinusElement) or other.group != self.group or other.ring != self.ring:
            raise RingMismatch("minus elements over different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MinusElement.scalar(self.group, other, self.ring)
        self._same(other)
        return MinusElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return MinusElement(self.group, [-a for a in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MinusElement(self.group, [a * other for a in self.coeffs], self.ring)
        self._same(other)
        return minus_project(self.lift() * other.lift())

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MinusElement.scalar(self.group, other, self.ring)
        return (isinstance(other, MinusElement) and self.group == other.group
                and self.ring == other.ring and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group, self.ring, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def sharp(self):
        return minus_project(self.lift().sharp())

    def change_ring(self, ring):
        return MinusElement(self.group, self.coeffs, ring)

    def evaluate(self, chi):
        if not chi.is_odd:
            raise ValueError("minus elements are only evaluated at odd characters")
        return self.lift().evaluate(chi)

    def multiplication_matrix(self):
        """Integer matrix of y -> self*y on the orbit basis (rows = images)."""
        G = self.group
        rows = []
        for r in G.minus_reps:
            basis = minus_project(GroupRingElement.basis(G, r, self.ring))
            rows.append(list((basis * self).coeffs))
        return rows

    def __repr__(self):
        return f"MinusElement({_format_terms(self.group, self.group.minus_reps, self.coeffs)}; {self.ring})"


def multiply(a, b):
    return a * b


def sharp(a):
    return a.sharp()


def minus_project(a):
    """Z[G] -> Z[G]_-: the coefficient of g c is moved to g with a sign flip."""
    G = a.group
    if not G.has_conjugation:
        raise TrivialConjugation("the minus quotient needs c != 1")
    out = [0] * len(G.minus_reps)
    for (k, s), x in zip(G.minus_position, a.coeffs):
        if x:
            out[k] += s * x
    return MinusElement(G, out, a.ring)


def decomposition_exponents(m, p):
    """Exponents k in (Z/m)^* acting as the decomposition group at p."""
    m2, _ = split_prime(m, p)
    powers = set()
    x = 1 % m2 if m2 > 1 else 0
    while True:
        if x in powers:
            break
        powers.add(x)
        x = (x * p) % m2 if m2 > 1 else 0
    return sorted(k for k in range(1, m + 1) if gcd(k, m) == 1 and (m2 == 1 or k % m2 in powers))


def galois_orbits(chars, p):
    """Partition a character set into orbits of the p-adic Galois action."""
    if not chars:
        return []
    G = chars[0].group
    ks = decomposition_exponents(G.exponent, p)
    remaining = list(chars)
    orbits = []
    while remaining:
        chi = remaining[0]
        orbit = []
        for k in ks:
            psi = chi.power(k)
            if psi not in orbit:
                orbit.append(psi)
        orbits.append(orbit)
        remaining = [psi for psi in remaining if psi not in orbit]
    return orbits


def is_galois_stable(chars, p):
    s = set(chars)
    return all(set(o) <= s for o in galois_orbits(list(chars), p))


class CharTuple:
    """Image of a group ring element in prod_{chi in Psi} O/p^N.

    Only ``char_image`` builds these, so every tuple comes from a genuine
    group ring element (kept as ``source``).
    """

    __slots__ = ("chars", "values", "exact", "nonzerodivisor", "source", "p", "precision")

    def __init__(self, *args, _token=None, **kwargs):
        if _token is not _CONSTRUCT:
            raise TypeError("CharTuple values come from char_image()")
        (self.chars, self.values, self.exact, self.nonzerodivisor,
         self.source, self.p, self.precision) = args

    def _combine(self, other, op):
        if not isinstance(other, CharTuple) or other.chars != self.chars or other.p != self.p:
            raise RingMismatch("character tuples over different character sets")
        return char_image(op(self.source, other.source), self.chars, self.p, self.precision)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def __eq__(self, other):
        return isinstance(other, CharTuple) and self.chars == other.chars and self.values == other.values

    def __hash__(self):
        return hash((self.chars, self.values))

    def __repr__(self):
        return f"CharTuple({list(self.values)}, nonzerodivisor={self.nonzerodivisor})"


_CONSTRUCT = object()


def char_image(a, chars, p=None, precision=None):
    """Evaluate a at every character of Psi and embed the values p-adically."""
    if isinstance(a, MinusElement):
        if any(not chi.is_odd for chi in chars):
            raise ValueError("minus elements can only be evaluated at odd characters")
        a = a.lift()
    if p is None:
        p = a.ring.p
    if precision is None:
        precision = a.ring.precision or DEFAULT_PRECISION
    if p is None:
        raise ValueError("a prime p is required for the character image")
    chars = tuple(chars)
    values = []
    exact = []
    nzd = True
    for chi in chars:
        x = a.evaluate(chi)
        y = embed_padic(x, p, precision)
        if x.is_zero():
            nzd = False
        elif y.is_zero():
            raise PrecisionExhausted(
                f"chi{chi.dual}(a) is nonzero but vanishes mod {p}^{precision}")
        values.append(y)
        exact.append(x)
    return CharTuple(chars, tuple(values), tuple(exact), nzd, a, p, precision, _token=_CONSTRUCT)


def divide_by_2t(a, t):
    """The x in the minus quotient with 2^t x = minus_project(a)."""
    m = minus_project(a) if isinstance(a, GroupRingElement) else a
    ring = m.ring
    G = m.group
    if t == 0:
        return m
    two_t = 2 ** t
    if ring.kind == "rationals":
        return MinusElement(G, [c / two_t for c in m.coeffs], ring)
    if ring.kind == "integers" or (ring.kind == "padic" and ring.p == 2):
        out = []
        for r, c in zip(G.minus_reps, m.coeffs):
            if c % two_t:
                have = vp(c, 2) if c else None
                raise NotDivisible(
                    f"coefficient {c} at orbit {r} has 2-adic valuation {have} < {t}",
                    orbit=r, coefficient=c)
            out.append(c // two_t)
        if ring.kind == "padic":
            new_ring = padic_ring(2, ring.precision - t)
            return MinusElement(G, out, new_ring)
        return MinusElement(G, out, ring)
    inv = pow(two_t, -1, ring.modulus)
    return MinusElement(G, [c * inv for c in m.coeffs], ring)
