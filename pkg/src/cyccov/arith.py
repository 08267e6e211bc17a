"""Exact modular arithmetic: canonical residues, multiplicative orders,
orbit decompositions of {1..m-1} under multiplication by a unit, and
validation of cover types.

Everything here is pure, deterministic and integer-exact.  Moduli are
plain Python ints; practical suites stay below m = 2**17.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadEntry,
    BadSum,
    Disconnected,
    NotAUnit,
    ValidationError,
    ZeroResidue,
)

MAX_MODULUS = (1 << 63) - 1


def _check_modulus(m: int) -> None:
    if not (2 <= m <= MAX_MODULUS):
        raise ValidationError(f"modulus must be in [2, 2^63-1], got {m}")


def canonical_residue(a: int, m: int) -> int:
    """The representative of a mod m in the open interval (0, m).

    Raises ZeroResidue when a is divisible by m; callers that tolerate
    zero use residue() instead.
    """
    _check_modulus(m)
    r = a % m
    if r == 0:
        raise ZeroResidue(f"{a} is divisible by {m}")
    return r


def residue(a: int, m: int) -> int:
    """Total reduction of a mod m into [0, m)."""
    _check_modulus(m)
    return a % m


def multiplicative_order(c: int, m: int) -> int:
    """Smallest f >= 1 with c^f = 1 mod m.  Raises NotAUnit if gcd(c,m) > 1."""
    _check_modulus(m)
    c = c % m
    if math.gcd(c, m) != 1:
        raise NotAUnit(f"gcd({c}, {m}) > 1")
    f = 1
    x = c
    while x != 1:
        x = x * c % m
        f += 1
    return f


def units(m: int) -> tuple[int, ...]:
    """All residues in [1, m) coprime to m, ascending."""
    _check_modulus(m)
    return tuple(c for c in range(1, m) if math.gcd(c, m) == 1)


def is_prime(n: int) -> bool:
    """Trial division; moduli in this artifact are small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n, ascending, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Partition of {1..m-1} into cycles of s -> c*s mod m.

    Orbits are stored as ascending tuples and listed by minimal
    representative, so the layout is byte-stable.
    """

    m: int
    c: int
    orbits: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(o[0] for o in self.orbits)

    def orbit_of(self, s: int) -> tuple[int, ...]:
        for o in self.orbits:
            if s in o:
                return o
        raise ValidationError(f"{s} not in [1, {self.m})")


@lru_cache(maxsize=128)
def orbit_decomposition(m: int, c: int) -> OrbitDecomposition:
    """Orbits of multiplication by the unit c on {1..m-1}."""
    _check_modulus(m)
    c = c % m
    if math.gcd(c, m) != 1:
        raise NotAUnit(f"gcd({c}, {m}) > 1")
    seen = bytearray(m)
    orbits = []
    for s in range(1, m):
        if seen[s]:
            continue
        orb = []
        x = s
        while not seen[x]:
            seen[x] = 1
            orb.append(x)
            x = x * c % m
        orbits.append(tuple(sorted(orb)))
    return OrbitDecomposition(m=m, c=c, orbits=tuple(orbits))


@dataclass(frozen=True)
class CoverType:
    """Ramification type (m; a_1, ..., a_r) of an m-cyclic cover of the line.

    Structural invariants (0 < a_i < m, sum a_i = 0 mod m, r >= 2) are
    enforced on construction.  Irreducibility (gcd(m, a_1..a_r) = 1) is
    exposed as the `connected` flag; validate_type() turns a False flag
    into a Disconnected error.
    """

    m: int
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_modulus(self.m)
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.a) < 2:
            raise BadEntry(f"need at least 2 exponents, got {len(self.a)}")
        for x in self.a:
            if not 0 < x < self.m:
                raise BadEntry(f"exponent {x} outside (0, {self.m})")
        if sum(self.a) % self.m != 0:
            raise BadSum(f"sum {sum(self.a)} is not 0 mod {self.m}")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def connected(self) -> bool:
        return math.gcd(self.m, *self.a) == 1

    def reduced(self) -> "CoverType":
        """The component type (m/d; a_i/d) for d = gcd(m, a_1..a_r)."""
        d = math.gcd(self.m, *self.a)
        if d == 1:
            return self
        return CoverType(self.m // d, tuple(x // d for x in self.a))

    def sorted(self) -> "CoverType":
        return CoverType(self.m, tuple(sorted(self.a)))

    def scaled(self, u: int) -> "CoverType":
        """Relabel characters: a_i -> <u * a_i> for a unit u."""
        if math.gcd(u, self.m) != 1:
            raise NotAUnit(f"gcd({u}, {self.m}) > 1")
        return CoverType(self.m, tuple(x * u % self.m for x in self.a))

    def __str__(self) -> str:
        return f"({self.m}; {','.join(map(str, self.a))})"


def validate_type(m: int, a) -> CoverType:
    """Checked constructor: BadEntry / BadSum / Disconnected on violation."""
    ct = CoverType(m, tuple(a))
    if not ct.connected:
        raise Disconnected(
            f"gcd({m}, {', '.join(map(str, ct.a))}) = {math.gcd(m, *ct.a)} > 1"
        )
    return ct


@dataclass(frozen=True)
class PrimeClass:
    """A residue class c in (Z/m)^x, standing in for any large prime p = c mod m.

    The multiplicative order f is derived; every quantity downstream
    depends on p only through this class.
    """

    m: int
    c: int

    def __post_init__(self) -> None:
        _check_modulus(self.m)
        object.__setattr__(self, "c", self.c % self.m)
        if math.gcd(self.c, self.m) != 1:
            raise NotAUnit(f"gcd({self.c}, {self.m}) > 1")

    @property
    def f(self) -> int:
        return multiplicative_order(self.c, self.m)

    def __str__(self) -> str:
        return f"c={self.c} mod {self.m} (order {self.f})"


def prime_class(m: int, c: int) -> PrimeClass:
    return PrimeClass(m, c)


def prime_class_from_prime(m: int, p: int) -> PrimeClass:
    """Derive the class p mod m, checking that p is an odd prime not dividing m."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if p == 2:
        raise ValidationError("characteristic 2 is out of scope")
    if m % p == 0:
        raise NotAUnit(f"{p} divides the modulus {m}")
    return PrimeClass(m, p % m)
