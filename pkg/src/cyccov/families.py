"""Generators for the no-good-degeneration families, verification suites
for their character-weight identities, and the exhaustive search driver.

The Mersenne family takes an odd prime f, sets m = 2^f - 1 and uses the
exponent cycle a = (1, 2, 4, ..., 2^(f-1)); the power-cycle family
generalizes to any odd m and unit alpha of order n dividing (m-1)/2.
Both are generically ordinary for every class that is a power of alpha,
which is what makes their certified nonexistence of good degenerations
interesting.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from .arith import (
    CoverType,
    PrimeClass,
    is_prime,
    multiplicative_order,
    prime_class,
    units,
    validate_type,
)
from .bounds import gamma, genus, p_rank_bound
from .errors import (
    BadClass,
    BadExponent,
    BadOrder,
    BadSum,
    DomainTooLarge,
    NotAUnit,
    ValidationError,
)

CHECKPOINT_SCHEMA_VERSION = 1
DEFAULT_SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class FamilySpec:
    """A power-cycle type (m; 1, alpha, ..., alpha^(n-1)) with its parameters."""

    kind: str  # "mersenne" | "power_cycle"
    m: int
    alpha: int
    n: int
    cover: CoverType

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "alpha": self.alpha,
            "n": self.n,
            "a": list(self.cover.a),
        }


def mersenne_family(f: int) -> FamilySpec:
    """m = 2^f - 1, a = (1, 2, ..., 2^(f-1)) for an odd prime f."""
    if f < 3 or not is_prime(f):
        raise BadExponent(f"f must be an odd prime, got {f}")
    m = (1 << f) - 1
    cover = validate_type(m, tuple(pow(2, j, m) for j in range(f)))
    return FamilySpec(kind="mersenne", m=m, alpha=2, n=f, cover=cover)


def power_family(m: int, alpha: int) -> FamilySpec:
    """a = (1, alpha, ..., alpha^(n-1)) mod m where n = ord(alpha).

    Requires m odd, gcd(alpha, m) = 1, n dividing (m-1)/2, and the
    exponent sum to vanish mod m (BadSum otherwise: the type is invalid
    and the family construction does not apply).
    """
    if m % 2 == 0:
        raise BadOrder(f"modulus must be odd, got {m}")
    if math.gcd(alpha, m) != 1:
        raise NotAUnit(f"gcd({alpha}, {m}) > 1")
    n = multiplicative_order(alpha, m)
    if (m - 1) // 2 % n != 0:
        raise BadOrder(f"ord({alpha} mod {m}) = {n} does not divide {(m - 1) // 2}")
    a = tuple(pow(alpha, j, m) for j in range(n))
    if sum(a) % m != 0:
        raise BadSum(f"exponent cycle of {alpha} mod {m} sums to {sum(a) % m}")
    cover = validate_type(m, a)
    return FamilySpec(kind="power_cycle", m=m, alpha=alpha % m, n=n, cover=cover)


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsetWeightReport:
    """Exhaustive check that subset-sum characters s = sum 2^j have
    gamma(s) = |S| and gamma(m-s) = f - |S| in the Mersenne family."""

    f: int
    m: int
    total: int
    passed: int
    failures: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "f": self.f,
            "m": self.m,
            "total": self.total,
            "passed": self.passed,
            "failures": [list(s) for s in self.failures],
        }


def verify_combilem(f: int) -> SubsetWeightReport:
    """Check both weight equalities for every proper nonempty subset of
    exponent indices {0..f-1}."""
    fam = mersenne_family(f)
    m, ct = fam.m, fam.cover
    total = 0
    passed = 0
    failures = []
    for k in range(1, f):
        for subset in combinations(range(f), k):
            s = sum(pow(2, j, m) for j in subset) % m
            total += 1
            if gamma(ct, s) == k and gamma(ct, m - s) == f - k:
                passed += 1
            else:
                failures.append(subset)
    return SubsetWeightReport(
        f=f, m=m, total=total, passed=passed, failures=tuple(failures)
    )


@dataclass(frozen=True)
class OrdinarityReport:
    f: int
    m: int
    c: int
    B: int
    genus: int
    ordinary: bool
    genus_closed_form: int      # (f-2)(m-1)/2, agrees with Riemann-Hurwitz
    genus_closed_form_alt: int  # (f-1)(m-1)/2, reported for comparison only

    def to_dict(self) -> dict:
        return {
            "f": self.f,
            "m": self.m,
            "c": self.c,
            "B": self.B,
            "genus": self.genus,
            "ordinary": self.ordinary,
            "genus_closed_form": self.genus_closed_form,
            "genus_closed_form_alt": self.genus_closed_form_alt,
        }


def verify_boundlem(f: int, c: int) -> OrdinarityReport:
    """Check B = genus for the Mersenne family at a class c = 2^i of order f.

    Reports the two candidate closed forms for the genus side by side;
    only (f-2)(m-1)/2 matches Riemann-Hurwitz and the computed B.
    """
    fam = mersenne_family(f)
    m = fam.m
    c = c % m
    if c not in {pow(2, i, m) for i in range(1, f)}:
        raise BadClass(f"{c} is not a nontrivial power of 2 mod {m}")
    cls = prime_class(m, c)
    if cls.f != f:
        raise BadClass(f"order of {c} mod {m} is {cls.f}, expected {f}")
    rep = p_rank_bound(fam.cover, cls)
    return OrdinarityReport(
        f=f,
        m=m,
        c=c,
        B=rep.B,
        genus=rep.genus,
        ordinary=rep.ordinary,
        genus_closed_form=(f - 2) * (m - 1) // 2,
        genus_closed_form_alt=(f - 1) * (m - 1) // 2,
    )


def verify_invariants(
    max_m: int = 12, max_r: int = 5, samples: int = 500, seed: int = 0
) -> dict:
    """Battery of structural invariants over a bounded domain.

    Everything is asserted by raising on failure inside the called
    operations; the report is purely a tally of what was exercised.
    """
    import random

    from .arith import orbit_decomposition
    from .bounds import all_eigenspace_dims, eigenspace_dim
    from .degen import enumerate_splits
    from .errors import InvariantViolation

    def check(cond: bool, what: str, ctx) -> None:
        if not cond:
            raise InvariantViolation(f"{what} failed at {ctx}")

    rng = random.Random(seed)
    report = {
        "max_m": max_m,
        "max_r": max_r,
        "samples": samples,
        "seed": seed,
        "orbit_partitions": 0,
        "dim_sums": 0,
        "weight_reflections": 0,
        "split_genus_checks": 0,
        "trivial_class_checks": 0,
    }
    for m in range(2, max_m + 1):
        for c in units(m):
            dec = orbit_decomposition(m, c)
            covered = sorted(s for orb in dec.orbits for s in orb)
            check(covered == list(range(1, m)), "orbit partition", (m, c))
            for orb in dec.orbits:
                sub = m // math.gcd(orb[0], m)  # always >= 2
                check(
                    len(orb) == multiplicative_order(c % sub, sub),
                    "orbit size",
                    (m, c, orb),
                )
            report["orbit_partitions"] += 1

    def random_type() -> CoverType | None:
        m = rng.randrange(3, max_m + 1)
        r = rng.randrange(2, max_r + 1)
        a = [rng.randrange(1, m) for _ in range(r - 1)]
        last = -sum(a) % m
        if last == 0:
            return None
        a.append(last)
        if math.gcd(m, *a) != 1:
            return None
        return CoverType(m, tuple(a))

    drawn = 0
    while drawn < samples:
        ct = random_type()
        if ct is None:
            continue
        drawn += 1
        dims = all_eigenspace_dims(ct)
        check(int(dims[1:].sum()) == genus(ct), "dim sum = genus", ct)
        report["dim_sums"] += 1
        for s in range(1, ct.m):
            if all(s * a % ct.m for a in ct.a):
                check(
                    gamma(ct, s) + gamma(ct, ct.m - s) == ct.r,
                    "weight reflection",
                    (ct, s),
                )
                report["weight_reflections"] += 1
                break
        if ct.r >= 4:
            for sp in enumerate_splits(ct):
                if sp.children_connected:
                    # genus additivity is asserted inside the split constructor
                    report["split_genus_checks"] += 1
        rep = p_rank_bound(ct, prime_class(ct.m, 1))
        check(rep.B == rep.genus, "trivial class is ordinary", ct)
        report["trivial_class_checks"] += 1
        s = rng.randrange(1, ct.m)
        check(int(dims[s]) == eigenspace_dim(ct, s), "vector/scalar dims", (ct, s))
    return report


# ---------------------------------------------------------------------------
# exhaustive search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchDomain:
    """Finite, explicitly bounded enumeration domain for the search driver."""

    m_values: tuple[int, ...]
    r_values: tuple[int, ...]
    classes: tuple[int, ...] | None = None  # None = all units per modulus
    skip_pairs: bool = False
    budget: int = DEFAULT_SEARCH_BUDGET

    def classes_for(self, m: int) -> tuple[int, ...]:
        if self.classes is None:
            return units(m)
        out = tuple(c % m for c in self.classes if math.gcd(c, m) == 1)
        if len(out) != len(self.classes):
            raise NotAUnit(f"some requested classes are not units mod {m}")
        return out

    def estimated_work(self) -> int:
        total = 0
        for m in self.m_values:
            ncls = len(self.classes_for(m))
            for r in self.r_values:
                total += math.comb(m + r - 2, r) * ncls * (1 << max(r - 1, 1))
        return total


def canonical_type(m: int, a) -> tuple[int, ...]:
    """Canonical representative: minimum over units u of sorted <u*a_i>.

    Search emits one representative per equivalence class; bounds and
    verdicts are invariant under both sorting and unit scaling.
    """
    a = tuple(sorted(int(x) % m for x in a))
    best = None
    for u in units(m):
        cand = tuple(sorted(u * x % m for x in a))
        if best is None or cand < best:
            best = cand
    return best


def _enumerate_canonical(m: int, r: int, skip_pairs: bool) -> list[tuple[int, ...]]:
    out = []
    for a in combinations_with_replacement(range(1, m), r):
        if sum(a) % m:
            continue
        if math.gcd(m, *a) != 1:
            continue
        if canonical_type(m, a) != a:
            continue
        if skip_pairs:
            ct = CoverType(m, a)
            from .degen import pair_condition

            if pair_condition(ct):
                continue
        out.append(a)
    return out


def _evaluate_chunk(tasks: list[tuple[int, tuple[int, ...], int]]) -> list[dict]:
    from .degen import certify

    out = []
    for m, a, c in tasks:
        verdict = certify(CoverType(m, a), prime_class(m, c))
        out.append(
            {
                "schema_version": CHECKPOINT_SCHEMA_VERSION,
                "kind": "search_result",
                "m": m,
                "a": list(a),
                "c": c,
                "verdict": verdict.kind,
                "b": verdict.b,
            }
        )
    return out


def search(
    domain: SearchDomain,
    checkpoint: str | None = None,
    workers: int = 1,
) -> list[dict]:
    """Evaluate certify() over every canonical (type, class) pair in the
    domain and return the CertifiedNoGoodDegeneration hits in canonical
    order.

    With a checkpoint path, each evaluated pair is appended to the file
    as one JSON record; a rerun skips pairs already present, so the
    search is resumable and its final output is identical either way.
    """
    est = domain.estimated_work()
    if est > domain.budget:
        raise DomainTooLarge(f"estimated work {est} exceeds budget {domain.budget}")

    tasks: list[tuple[int, tuple[int, ...], int]] = []
    for m in sorted(domain.m_values):
        classes = domain.classes_for(m)
        for r in sorted(domain.r_values):
            if r < 2:
                raise ValidationError(f"r must be >= 2, got {r}")
            for a in _enumerate_canonical(m, r, domain.skip_pairs):
                for c in classes:
                    tasks.append((m, a, c))

    done: dict[tuple, dict] = {}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec.get("schema_version") != CHECKPOINT_SCHEMA_VERSION:
                    raise ValidationError(
                        f"checkpoint schema {rec.get('schema_version')} unsupported"
                    )
                done[(rec["m"], tuple(rec["a"]), rec["c"])] = rec

    todo = [t for t in tasks if t not in done]
    fresh: list[dict] = []
    if todo:
        if workers > 1:
            chunk = max(1, len(todo) // (workers * 4))
            chunks = [todo[i : i + chunk] for i in range(0, len(todo), chunk)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_evaluate_chunk, chunks):
                    fresh.extend(part)
        else:
            fresh = _evaluate_chunk(todo)
        if checkpoint:
            with open(checkpoint, "a", encoding="utf-8") as fh:
                for rec in fresh:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")

    by_key = dict(done)
    for rec in fresh:
        by_key[(rec["m"], tuple(rec["a"]), rec["c"])] = rec
    results = [by_key[t] for t in tasks]
    from .degen import CERTIFIED_NO

    return [rec for rec in results if rec["verdict"] == CERTIFIED_NO]
