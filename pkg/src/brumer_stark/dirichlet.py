"""(Z/f)^* and its quotients as Galois groups of abelian extensions of Q.

The residue a corresponds to sigma_a: zeta_f -> zeta_f^a.  Complex
conjugation is sigma_{-1}.
"""
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

from sympy import factorint

from .cyclotomic import Cyclotomic
from .errors import BadConductor, NotSubgroup
from .groups import FiniteAbelianGroup


@dataclass(frozen=True)
class PlaceSpec:
    """A place of the base field as seen by the Galois group G.

    ``frobenius`` is a Frobenius element (a lift modulo inertia when the
    place ramifies) and ``inertia`` lists generators of the inertia
    subgroup.  Archimedean places carry c in both slots.
    """

    label: str
    kind: str = "finite"
    norm: int = None
    residue_char: int = None
    frobenius: tuple = None
    inertia: tuple = field(default=())
    ramified: bool = False

    @property
    def is_finite(self):
        return self.kind == "finite"

    def character_unramified(self, chi):
        return all(chi.exp_at(g) == 0 for g in self.inertia)


def _primitive_root(q, k):
    n = q ** k
    phi = n - n // q
    primes = list(factorint(phi))
    for g in range(2, n):
        if gcd(g, q) != 1:
            continue
        if all(pow(g, phi // r, n) != 1 for r in primes):
            return g
    return 1


class DirichletGroup:
    """G = (Z/f)^* / <kernel>, with residues mapped to group elements."""

    def __init__(self, f, kernel=()):
        if f < 1:
            raise BadConductor(f"conductor must be positive, got {f}")
        self.f = f
        self.prime_powers = {q: k for q, k in sorted(factorint(f).items())}
        orders = []
        gens = []
        for q, k in self.prime_powers.items():
            qk = q ** k
            local = []
            if q == 2:
                if k == 2:
                    local = [(qk - 1, 2)]
                elif k >= 3:
                    local = [(qk - 1, 2), (5, 2 ** (k - 2))]
            else:
                local = [(_primitive_root(q, k), qk - qk // q)]
            for g, d in local:
                gens.append(self._crt_lift(g, q))
                orders.append(d)
        if not orders:
            orders, gens = [1], [1 % f if f > 1 else 0]
        self._full = FiniteAbelianGroup(orders)
        self._gens = gens
        self._full_log = {}
        for e in self._full.elements:
            a = 1
            for g, x in zip(gens, e):
                a = a * pow(g, x, f) % f if f > 1 else 0
            self._full_log[a % f if f > 1 else 0] = e
        kernel = [k % f if f > 1 else 0 for k in kernel]
        for a in kernel:
            if a not in self._full_log:
                raise NotSubgroup(f"{a} is not a unit modulo {f}")
        c_full = self._full_log[(-1) % f if f > 1 else 0]
        full = FiniteAbelianGroup(orders, c_full)
        self._quot = full.quotient([self._full_log[a] for a in kernel])
        self.group = self._quot.target
        self.kernel = tuple(kernel)

    def _crt_lift(self, g, q):
        qk = q ** self.prime_powers[q]
        rest = self.f // qk
        if rest == 1:
            return g % qk
        # a = g mod q^k, a = 1 mod rest
        t = ((g - 1) * pow(rest, -1, qk)) % qk
        return (1 + rest * t) % self.f

    @cached_property
    def units(self):
        if self.f == 1:
            return [0]
        return [a for a in range(1, self.f) if gcd(a, self.f) == 1]

    @cached_property
    def _log_table(self):
        return {a: self._quot(e) for a, e in self._full_log.items()}

    def log(self, a):
        """sigma_a as an element of G (a prime to f)."""
        key = a % self.f if self.f > 1 else 0
        try:
            return self._log_table[key]
        except KeyError:
            raise ValueError(f"{a} is not a unit modulo {self.f}") from None

    # local data at primes ---------------------------------------------------
    def _local_units(self, q):
        """Units congruent to 1 away from q^k, generating inertia at q."""
        k = self.prime_powers.get(q, 0)
        if k == 0:
            return []
        qk = q ** k
        out = []
        for a in range(1, qk):
            if gcd(a, q) == 1:
                out.append(self._crt_lift(a, q))
        return out

    def inertia(self, q):
        elems = {self.log(a) for a in self._local_units(q)}
        elems.discard(self.group.identity)
        return tuple(sorted(elems))

    def frobenius(self, q):
        """Frobenius at q; for q dividing f a lift that is trivial at q."""
        if self.f % q:
            return self.log(q)
        qk = q ** self.prime_powers[q]
        rest = self.f // qk
        if rest == 1:
            return self.group.identity
        # a = q mod rest and a = 1 mod q^k
        t = ((q - 1) * pow(qk, -1, rest)) % rest
        return self.log(1 + qk * t)

    def place(self, q):
        inertia = self.inertia(q)
        return PlaceSpec(label=str(q), kind="finite", norm=q, residue_char=q,
                         frobenius=self.frobenius(q), inertia=inertia,
                         ramified=bool(inertia))

    def archimedean(self):
        c = self.group.c
        inertia = (c,) if c != self.group.identity else ()
        return PlaceSpec(label="inf", kind="archimedean", frobenius=c, inertia=inertia,
                         ramified=bool(inertia))

    def character(self, chi):
        return DirichletCharacter(self, chi)

    def characters(self):
        return list(self._characters)

    @cached_property
    def _characters(self):
        return [DirichletCharacter(self, chi) for chi in self.group.characters]


@lru_cache(maxsize=256)
def dirichlet_group(f, kernel=()):
    """Shared DirichletGroup instances, so per-character data is computed once."""
    return DirichletGroup(f, tuple(kernel))


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class DirichletCharacter:
    """A character of G read as a Dirichlet character modulo f."""

    def __init__(self, dg, chi):
        self.dg = dg
        self.character = chi
        self.m = chi.m

    @property
    def is_odd(self):
        return self.character.is_odd

    def exp_at(self, g):
        return self.character.exp_at(g)

    def __call__(self, g):
        return self.character(g)

    def value_exp(self, a):
        """Exponent of zeta_m in chi(a) for a prime to f, else None."""
        f = self.dg.f
        if f > 1 and gcd(a, f) != 1:
            return None
        return self.character.exp_at(self.dg.log(a))

    @cached_property
    def conductor(self):
        f = self.dg.f
        for d in _divisors(f):
            ok = True
            for a in self.dg.units:
                if (a - 1) % d == 0 and self.value_exp(a) != 0:
                    ok = False
                    break
            if ok:
                return d
        return f

    @cached_property
    def ramified_primes(self):
        return tuple(sorted(factorint(self.conductor)))

    def primitive_exp(self, n):
        """Exponent of the primitive character at n, or None if gcd(n, cond) > 1."""
        fc = self.conductor
        if fc > 1 and gcd(n, fc) != 1:
            return None
        f = self.dg.f
        a = n % fc if fc > 1 else 1
        while gcd(a, f) != 1:
            a += fc
        return self.value_exp(a)

    def primitive_value(self, n):
        e = self.primitive_exp(n)
        if e is None:
            return Cyclotomic.from_rational(self.m, 0)
        return Cyclotomic.zeta(self.m, e)

    def inverse(self):
        return self.dg._characters[self.dg.group.index(self.character.inverse().dual)]

    def __repr__(self):
        return f"DirichletCharacter(f={self.dg.f}, dual={self.character.dual}, cond={self.conductor})"

