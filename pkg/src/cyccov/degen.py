"""Two-component degeneration analysis.

A degenerate marked line splits the branch indices {1..r} into two
sides S1 | S2 (each of size >= 2) joined at one node.  Each side
carries a child cover whose exponents are the side's own exponents plus
the node exponent <sum of the other side>; a node exponent of 0 means
the child is unramified over the node and the entry is dropped.

The p-rank of any nodal fiber realizing a split is at most

    B(child1) + B(child2) + (node_count - 1)

where node_count = gcd(node exponent, m) is the number of points of the
nodal curve above the node (m when unramified) and the last term is the
toric contribution of the dual-graph cycles.  certify() compares these
per-split ceilings against a target b (default B of the parent): if
every split falls strictly below b, no separable special fiber can
exist and the verdict is CertifiedNoGoodDegeneration.  A split meeting
the bound is only a WitnessCandidate; the certificate logic never
claims existence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .arith import CoverType, PrimeClass, canonical_residue, prime_class
from .bounds import gamma, genus, p_rank_bound
from .errors import BadSubset, InvariantViolation, ValidationError

CERTIFIED_NO = "CertifiedNoGoodDegeneration"
WITNESS_CANDIDATE = "WitnessCandidate"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Split:
    """One unordered two-component degeneration of a marked line.

    side1/side2 are 1-based index tuples; side1 contains index 1.
    node_exp_i is the node exponent seen from side i (0 = unramified
    node, dropped from the child's exponent list).
    """

    parent: CoverType
    side1: tuple[int, ...]
    side2: tuple[int, ...]
    node_exp_1: int
    node_exp_2: int
    child1: CoverType
    child2: CoverType
    node_count: int

    @property
    def children_connected(self) -> bool:
        return self.child1.connected and self.child2.connected

    def to_dict(self) -> dict:
        return {
            "side1": list(self.side1),
            "side2": list(self.side2),
            "node_exp_1": self.node_exp_1,
            "node_exp_2": self.node_exp_2,
            "child1": {"m": self.child1.m, "a": list(self.child1.a)},
            "child2": {"m": self.child2.m, "a": list(self.child2.a)},
            "node_count": self.node_count,
            "children_connected": self.children_connected,
        }


def child_types(ct: CoverType, side1) -> tuple[CoverType, CoverType]:
    """Child covers for the split with index set side1 (1-based) on side 1."""
    sp = _make_split(ct, tuple(sorted(side1)))
    return sp.child1, sp.child2


def _make_split(ct: CoverType, side1: tuple[int, ...]) -> Split:
    r = ct.r
    s1 = tuple(sorted(side1))
    if len(set(s1)) != len(s1) or any(not 1 <= i <= r for i in s1):
        raise BadSubset(f"side {s1} is not a subset of 1..{r}")
    if not 2 <= len(s1) <= r - 2:
        raise BadSubset(f"side size {len(s1)} outside [2, {r - 2}]")
    s2 = tuple(i for i in range(1, r + 1) if i not in set(s1))
    m = ct.m
    a1 = [ct.a[i - 1] for i in s1]
    a2 = [ct.a[i - 1] for i in s2]
    e1 = sum(a2) % m
    e2 = sum(a1) % m
    if (e1 + e2) % m != 0:
        raise InvariantViolation("node exponents do not cancel")
    child1 = CoverType(m, tuple(a1 + ([e1] if e1 else [])))
    child2 = CoverType(m, tuple(a2 + ([e2] if e2 else [])))
    node_count = math.gcd(e1, m) if e1 else m
    sp = Split(
        parent=ct,
        side1=s1,
        side2=s2,
        node_exp_1=e1,
        node_exp_2=e2,
        child1=child1,
        child2=child2,
        node_count=node_count,
    )
    if sp.children_connected:
        gsum = genus(child1) + genus(child2) + node_count - 1
        if gsum != genus(ct):
            raise InvariantViolation(
                f"genus additivity fails for {ct} split {s1}: {gsum} != {genus(ct)}"
            )
    return sp


def enumerate_splits(ct: CoverType) -> tuple[Split, ...]:
    """All splits with side 1 containing index 1, in ascending lexicographic
    order of side1.  Empty for r <= 3 (a 3-pointed line is rigid)."""
    r = ct.r
    if r < 4:
        return ()
    sides = []
    for k in range(1, r - 2):
        for rest in combinations(range(2, r + 1), k):
            sides.append((1,) + rest)
    sides.sort()
    return tuple(_make_split(ct, s) for s in sides)


def _child_bound(child: CoverType, cls: PrimeClass) -> int:
    """B of a child; a disconnected child with gcd d contributes d copies of
    its reduced component type, bounded with the class reduced mod m/d."""
    if child.connected:
        return p_rank_bound(child, cls).B
    d = math.gcd(child.m, *child.a)
    red = child.reduced()
    red_cls = prime_class(red.m, cls.c % red.m)
    return d * p_rank_bound(red, red_cls).B


def split_p_rank_bound(split: Split, cls: PrimeClass) -> int:
    """Ceiling B(child1) + B(child2) + toric term for the split's nodal fibers.

    For disconnected children the component count enters both the B sum
    and the dual-graph cycle count; certify() treats such splits as
    inconclusive rather than trusting this number.
    """
    if cls.m != split.parent.m:
        raise ValidationError("class modulus differs from parent modulus")
    b1 = _child_bound(split.child1, cls)
    b2 = _child_bound(split.child2, cls)
    comps = 0
    for child in (split.child1, split.child2):
        comps += 1 if child.connected else math.gcd(child.m, *child.a)
    # first Betti number of the dual graph: edges - vertices + 1
    toric = split.node_count - comps + 1
    return b1 + b2 + max(toric, 0)


@dataclass(frozen=True)
class SplitBound:
    split: Split
    bound: int
    trusted: bool


@dataclass(frozen=True)
class DegenerationVerdict:
    """Outcome of the two-component necessary condition at p-rank target b."""

    kind: str
    cover: CoverType
    cls: PrimeClass
    b: int
    per_split: tuple[SplitBound, ...]
    witness: Split | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {
            "verdict": self.kind,
            "m": self.cover.m,
            "a": list(self.cover.a),
            "c": self.cls.c,
            "b": self.b,
            "splits": [
                {
                    "side1": list(sb.split.side1),
                    "bound": sb.bound,
                    "trusted": sb.trusted,
                }
                for sb in self.per_split
            ],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.reason:
            out["reason"] = self.reason
        return out


def certify(ct: CoverType, cls: PrimeClass, b: int | None = None) -> DegenerationVerdict:
    """Certificate for the nonexistence of a good degeneration at p-rank b.

    b defaults to B(ct, cls), the p-rank of the maximal elementary-abelian
    part carried by a generic cover of this type.  CertifiedNo means every
    split's ceiling is strictly below b.  The first split (in canonical
    order) whose trusted ceiling reaches b is returned as a witness
    candidate, explicitly not a proof of existence.  Splits with
    disconnected children are never trusted; if they are the only
    obstruction the verdict is Inconclusive.
    """
    if b is None:
        b = p_rank_bound(ct, cls).B
    if ct.r < 4:
        return DegenerationVerdict(
            kind=INCONCLUSIVE,
            cover=ct,
            cls=cls,
            b=b,
            per_split=(),
            reason="no two-component degenerations exist for r <= 3",
        )
    per_split = []
    witness = None
    flagged = False
    for sp in enumerate_splits(ct):
        bound = split_p_rank_bound(sp, cls)
        trusted = sp.children_connected
        per_split.append(SplitBound(split=sp, bound=bound, trusted=trusted))
        if not trusted:
            flagged = True
        elif bound >= b and witness is None:
            witness = sp
    if witness is not None:
        return DegenerationVerdict(
            kind=WITNESS_CANDIDATE,
            cover=ct,
            cls=cls,
            b=b,
            per_split=tuple(per_split),
            witness=witness,
        )
    if flagged:
        return DegenerationVerdict(
            kind=INCONCLUSIVE,
            cover=ct,
            cls=cls,
            b=b,
            per_split=tuple(per_split),
            reason="splits with disconnected children cannot be bounded",
        )
    return DegenerationVerdict(
        kind=CERTIFIED_NO, cover=ct, cls=cls, b=b, per_split=tuple(per_split)
    )


def pair_condition(ct: CoverType) -> bool:
    """True iff some pair a_i + a_j = 0 mod m (a sufficient condition for a
    good degeneration to exist)."""
    r = ct.r
    for i in range(r):
        for j in range(i + 1, r):
            if (ct.a[i] + ct.a[j]) % ct.m == 0:
                return True
    return False


@dataclass(frozen=True)
class SplitDiagnostics:
    """Character-weight diagnostics for one side of a power-family split.

    gamma1_orbit lists the child-cover weights gamma1(s * alpha^i) for
    i = 0..f-1 where s is the subset character sum; orbit_sum is their
    exact total.  The child is nonordinary precisely when gamma1 is
    nonconstant on the orbit, which orbit_sum % f != 0 certifies.
    """

    f: int
    m: int
    side: tuple[int, ...]
    s: int
    child: CoverType
    gamma1_orbit: tuple[int, ...]
    d_s: int
    orbit_sum: int
    sum_mod_f: int
    claimed_mod_f: int
    matches_claimed_congruence: bool
    nonzero_mod_f: bool

    def to_dict(self) -> dict:
        return {
            "f": self.f,
            "m": self.m,
            "side": list(self.side),
            "s": self.s,
            "child": {"m": self.child.m, "a": list(self.child.a)},
            "gamma1_orbit": list(self.gamma1_orbit),
            "d_s": self.d_s,
            "orbit_sum": self.orbit_sum,
            "sum_mod_f": self.sum_mod_f,
            "claimed_mod_f": self.claimed_mod_f,
            "matches_claimed_congruence": self.matches_claimed_congruence,
            "nonzero_mod_f": self.nonzero_mod_f,
        }


def family_split_diagnostics(f: int, side) -> SplitDiagnostics:
    """Diagnostics for the Mersenne family (2^f - 1; 1, 2, ..., 2^(f-1)) at
    the split whose side-1 exponent indices are `side` (a subset of 0..f-1).

    Computes s = sum of 2^j over the side, the child cover with node
    exponent m - s, the weights gamma1 over the Frobenius orbit of s,
    and d_s = <m - s^2>, which provably equals <s*(m-s)> (asserted).
    The historical closed form |side|*(|side|-1) mod f for the orbit sum
    is reported for comparison but not asserted: it fails for sides
    whose character sum changes binary weight under squaring.
    """
    from .families import mersenne_family  # local import; families uses certify

    fam = mersenne_family(f)
    m = fam.cover.m
    side_t = tuple(sorted(set(int(j) for j in side)))
    if any(not 0 <= j < f for j in side_t):
        raise BadSubset(f"side {side_t} is not a subset of 0..{f - 1}")
    if not 2 <= len(side_t) <= f - 2:
        raise BadSubset(f"side size {len(side_t)} outside [2, {f - 2}]")
    s = sum(pow(2, j, m) for j in side_t) % m
    child = CoverType(m, tuple(pow(2, j, m) for j in side_t) + (m - s,))
    orbit_vals = tuple(
        gamma(child, canonical_residue(s * pow(2, i, m), m)) for i in range(f)
    )
    d_s = canonical_residue(m - s * s, m)
    if d_s != canonical_residue(s * (m - s), m):
        raise InvariantViolation(f"d_s identities disagree for f={f}, side={side_t}")
    total = sum(orbit_vals)
    k = len(side_t)
    return SplitDiagnostics(
        f=f,
        m=m,
        side=side_t,
        s=s,
        child=child,
        gamma1_orbit=orbit_vals,
        d_s=d_s,
        orbit_sum=total,
        sum_mod_f=total % f,
        claimed_mod_f=k * (k - 1) % f,
        matches_claimed_congruence=total % f == k * (k - 1) % f,
        nonzero_mod_f=total % f != 0,
    )
