"""Character weights, eigenspace dimensions, the p-rank upper bound B,
the Riemann-Hurwitz genus, and the generic-ordinarity test.

For a cover type (m; a) and a character s in {1..m-1}:

    gamma(s)          = (sum over t with s*a_t != 0 mod m of <s*a_t>) / m
    eigenspace_dim(s) = r_s - 1 - gamma(s)

where r_s counts the nonzero terms and <.> is the canonical residue in
(0, m).  Branch points whose inertia character s*a_t vanishes are
dropped (their fiber is unramified for that character), which is what
makes both quantities total; the surviving sum is still divisible by m
because every dropped term is itself 0 mod m.

B is the sum over orbits of {1..m-1} under multiplication by the class
c of (orbit size) * (minimum eigenspace dimension over the orbit); the
orbit size is the cycle length found by enumeration.  B bounds the
p-rank of every cover of the given type in characteristic p = c mod m,
with equality for generic branch points.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import CoverType, PrimeClass, orbit_decomposition, validate_type
from .errors import InvariantViolation, ValidationError

# numpy int64 products s*a_t stay exact only while m*m < 2**63; the
# practical cap of 2**17 is far below that, but guard anyway.
_VECTOR_LIMIT = 1 << 31


def _check_char(ct: CoverType, s: int) -> None:
    if not 1 <= s <= ct.m - 1:
        raise ValidationError(f"character {s} outside [1, {ct.m - 1}]")


def gamma_support(ct: CoverType, s: int) -> tuple[int, int]:
    """(gamma(s), r_s): the normalized residue sum and its support size."""
    _check_char(ct, s)
    m = ct.m
    tot = 0
    r_s = 0
    for a in ct.a:
        v = s * a % m
        if v:
            tot += v
            r_s += 1
    if tot % m:
        raise InvariantViolation(
            f"gamma({s}) not integral for {ct}: sum {tot} mod {m} != 0"
        )
    return tot // m, r_s


def gamma(ct: CoverType, s: int) -> int:
    """Character weight gamma(s); an exact integer for every valid type."""
    return gamma_support(ct, s)[0]


def eigenspace_dim(ct: CoverType, s: int) -> int:
    """Dimension r_s - 1 - gamma(s) of the s-indexed cohomology eigenspace."""
    g, r_s = gamma_support(ct, s)
    d = r_s - 1 - g
    if d < 0:
        raise InvariantViolation(f"negative eigenspace dim for {ct}, s={s}")
    return d


def all_eigenspace_dims(ct: CoverType) -> np.ndarray:
    """dims[s] = eigenspace_dim(ct, s) for s in 1..m-1 (index 0 unused).

    Vectorized for the search and certificate hot paths; falls back to
    the scalar loop for moduli past the int64-safe window.
    """
    m = ct.m
    if m > _VECTOR_LIMIT:
        out = np.zeros(m, dtype=object)
        for s in range(1, m):
            out[s] = eigenspace_dim(ct, s)
        return out
    a = np.asarray(ct.a, dtype=np.int64)
    s = np.arange(m, dtype=np.int64)
    v = s[:, None] * a[None, :] % m
    tot = v.sum(axis=1)
    r_s = (v != 0).sum(axis=1)
    if (tot[1:] % m).any():
        raise InvariantViolation(f"non-integral gamma for {ct}")
    dims = r_s - 1 - tot // m
    dims[0] = 0
    if (dims[1:] < 0).any():
        raise InvariantViolation(f"negative eigenspace dim for {ct}")
    return dims


def genus(ct: CoverType) -> int:
    """Riemann-Hurwitz genus 1 - m + (1/2) sum_i (m - gcd(a_i, m)).

    With sum a_i = 0 mod m the cover is unramified over infinity, so the
    listed points carry all the branching.
    """
    import math

    tot = sum(ct.m - math.gcd(a, ct.m) for a in ct.a)
    if tot % 2:
        raise InvariantViolation(f"odd ramification total for {ct}")
    return 1 - ct.m + tot // 2


@dataclass(frozen=True)
class OrbitBound:
    representative: int
    size: int
    min_dim: int


@dataclass(frozen=True)
class BoundReport:
    """Per-orbit detail behind the p-rank bound B for one (type, class) pair."""

    cover: CoverType
    cls: PrimeClass
    per_orbit: tuple[OrbitBound, ...]
    B: int
    genus: int
    ordinary: bool

    def to_dict(self) -> dict:
        return {
            "m": self.cover.m,
            "a": list(self.cover.a),
            "c": self.cls.c,
            "f": self.cls.f,
            "per_orbit": [
                {"rep": ob.representative, "size": ob.size, "min_dim": ob.min_dim}
                for ob in self.per_orbit
            ],
            "B": self.B,
            "genus": self.genus,
            "ordinary": self.ordinary,
        }


def p_rank_bound(ct: CoverType, cls: PrimeClass) -> BoundReport:
    """B = sum over orbits O of |O| * min_{s in O} eigenspace_dim(s).

    Cross-asserts the two ordinarity characterizations (B = genus vs
    gamma constant on every orbit) before reporting.
    """
    if cls.m != ct.m:
        raise ValidationError(f"class modulus {cls.m} != type modulus {ct.m}")
    validate_type(ct.m, ct.a)
    dims = all_eigenspace_dims(ct)
    dec = orbit_decomposition(ct.m, cls.c)
    per_orbit = []
    total = 0
    gamma_constant = True
    for orb in dec.orbits:
        od = [int(dims[s]) for s in orb]
        mn = min(od)
        if any(d != od[0] for d in od):
            gamma_constant = False
        per_orbit.append(OrbitBound(representative=orb[0], size=len(orb), min_dim=mn))
        total += len(orb) * mn
    g = genus(ct)
    if not 0 <= total <= g:
        raise InvariantViolation(f"B={total} outside [0, genus={g}] for {ct}")
    ordinary = total == g
    if ordinary != gamma_constant:
        raise InvariantViolation(
            f"ordinarity characterizations disagree for {ct}, {cls}: "
            f"B==genus is {ordinary}, gamma-constant is {gamma_constant}"
        )
    return BoundReport(
        cover=ct,
        cls=cls,
        per_orbit=tuple(per_orbit),
        B=total,
        genus=g,
        ordinary=ordinary,
    )


def is_generically_ordinary(ct: CoverType, cls: PrimeClass) -> bool:
    """True iff gamma is constant on every orbit, i.e. B = genus."""
    return p_rank_bound(ct, cls).ordinary
