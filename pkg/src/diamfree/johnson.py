"""Largest 4-distance sets containing the Johnson representation J~(9,4).

Every vector is stored multiplied by 3, so all coordinates are integers and
squared distances are 9 times the true ones: the allowed set {2, 4, 6, 8}
becomes {18, 36, 54, 72}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .families import Family, X, Y, Z, frak_M
from .lattice import Signature, TritVector, generate

SCALE = 3
ALLOWED_SCALED = frozenset({18, 36, 54, 72})
ALLOWED = frozenset({2, 4, 6, 8})

Vec = tuple[int, ...]  # scaled coordinates


def d2(x: Vec, y: Vec) -> int:
    """Scaled squared distance (9 times the true value)."""
    return sum((a - b) * (a - b) for a, b in zip(x, y))


def true_d2(x: Vec, y: Vec) -> Fraction:
    return Fraction(d2(x, y), SCALE * SCALE)


def as_fractions(x: Vec) -> tuple[Fraction, ...]:
    return tuple(Fraction(e, SCALE) for e in x)


def coordinate_sum(x: Vec) -> Fraction:
    return Fraction(sum(x), SCALE)


def _arrangements(pattern: dict[int, int]) -> list[Vec]:
    base = [v for v, c in sorted(pattern.items()) for _ in range(c)]
    return sorted(set(permutations(base)))


def johnson_embedding(n: int, m: int) -> list[Vec]:
    """The C(n, m) indicator vectors (unscaled 0/1), i.e. L_{0,n-m,m}."""
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    return [tuple(1 if i in s else 0 for i in range(n)) for s in combinations(range(n), m)]


def johnson_scaled() -> list[Vec]:
    return [tuple(SCALE * e for e in x) for x in johnson_embedding(9, 4)]


POOL_PATTERNS = {
    "i": {2: 7, -1: 2},
    "ii": {2: 8, -4: 1},
    "iii": {4: 1, 1: 8},
    "iv": {4: 2, 1: 6, -2: 1},
}


def candidate_pools() -> dict[str, list[Vec]]:
    """The four families of vectors that can join J~(9,4) keeping 4 distances."""
    return {key: _arrangements(pat) for key, pat in POOL_PATTERNS.items()}


# pool(iv) <-> L_{1,6,2}: -2/3, 1/3, 4/3 -> -1, 0, 1 is the translation by -1/3

def to_lattice(y: Vec) -> TritVector:
    mapping = {-2: -1, 1: 0, 4: 1}
    return TritVector(tuple(mapping[e] for e in y))


def from_lattice(x: TritVector) -> Vec:
    return tuple(SCALE * e + 1 for e in x.entries)


def pool_iv_isometry() -> dict[Vec, TritVector]:
    return {y: to_lattice(y) for y in candidate_pools()["iv"]}


def pool_iv_prime() -> list[Vec]:
    """The pool(iv) part of the conjectured extremal set, listed directly."""
    out = []
    for y in candidate_pools()["iv"]:
        i = y.index(-2)
        highs = [j for j, e in enumerate(y) if e == 4]
        if all(j > i for j in highs):
            out.append(y)
    out += [(1,) * 6 + (4, -2, 4), (1,) * 6 + (4, 4, -2)]
    return sorted(out)


def preimage(family: Family) -> list[Vec]:
    return sorted(from_lattice(x) for x in family)


def compat_graph(chosen_ii) -> list[Vec]:
    """Pool(iv) vectors with no 4/3 entry where a chosen pool(ii) vector has -4/3."""
    blocked = set()
    for x in chosen_ii:
        blocked.add(x.index(-4))
    return [y for y in candidate_pools()["iv"] if not any(y[i] == 4 for i in blocked)]


def pool_ii_prefix(t: int) -> list[Vec]:
    """X^(ii)(t): the pool(ii) vectors whose -4/3 sits in the first t positions."""
    return [x for x in candidate_pools()["ii"] if x.index(-4) < t]


def t_bound(t: int) -> int:
    """|J~ u X(i) u X(iii)| + t + M_{6-t} + t C(9-t, 2) for 1 <= t <= 6."""
    if not 1 <= t <= 6:
        raise ValueError("t must lie in 1..6")
    base = len(johnson_scaled()) + len(candidate_pools()["i"]) + len(candidate_pools()["iii"])
    return base + t + frak_M(6 - t) + t * comb(9 - t, 2)


def t_cubic(t: int) -> Fraction:
    return Fraction(t**3, 3) - Fraction(9 * t * t, 2) + Fraction(31 * t, 6) + 257


def large_t_bound(t: int) -> int:
    """Printed bound for t = 7, 8, 9: at most one pool(iv) vector survives."""
    if not 7 <= t <= 9:
        raise ValueError("t must lie in 7..9")
    return 171 + t + 1


def _max_compatible(vectors: list[Vec]) -> int:
    """Largest subset with all pairwise scaled distances allowed (brute force, tiny inputs)."""
    best = 0
    for r in range(len(vectors), 0, -1):
        for sub in combinations(vectors, r):
            if all(d2(a, b) in ALLOWED_SCALED for a, b in combinations(sub, 2)):
                return r
    return best


def large_t_exact(t: int) -> dict:
    """Exact count of pool(iv) vectors usable alongside X^(ii)(t), for t = 7..9.

    Survivors must avoid a 4/3 in the first t positions, and be pairwise at
    allowed distances; they must also sit at allowed distances from the
    chosen pool(ii) vectors.
    """
    chosen = pool_ii_prefix(t)
    survivors = [y for y in compat_graph(chosen)
                 if all(d2(x, y) in ALLOWED_SCALED for x in chosen)]
    usable = _max_compatible(survivors)
    return {"t": t, "survivors": len(survivors), "usable": usable, "size_bound": 171 + t + usable}


@dataclass
class Report:
    variant: str
    size: int
    distance_set: list[int]
    maximal: bool
    violations: list = field(default_factory=list)
    components: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.size == 258 and set(self.distance_set) == set(ALLOWED) and self.maximal and not self.violations

    def to_dict(self) -> dict:
        return {"variant": self.variant, "size": self.size, "distance_set": self.distance_set,
                "maximal": self.maximal, "violations": self.violations, "components": self.components}


def extremal_set(variant: str) -> tuple[list[Vec], dict]:
    """J~(9,4) u X(i) u X(iii) u {(-4/3, (2/3)^8)} u (pool(iv) image of X_6, Y_6 or Z_6)."""
    pools = candidate_pools()
    parts = {"X": X, "Y": Y, "Z": Z}
    if variant not in parts:
        raise ValueError("variant must be one of X, Y, Z")
    iv = preimage(parts[variant](6))
    special = (-4,) + (2,) * 8
    comps = {"johnson": johnson_scaled(), "i": pools["i"], "iii": pools["iii"], "ii": [special], "iv": iv}
    points = [p for key in ("johnson", "i", "iii", "ii", "iv") for p in comps[key]]
    return points, {key: len(v) for key, v in comps.items()}


def verify_258(variant: str) -> Report:
    points, comps = extremal_set(variant)
    violations = []
    distances = set()
    if len(set(points)) != len(points):
        violations.append({"kind": "duplicate"})
    for a, b in combinations(points, 2):
        d = d2(a, b)
        distances.add(d)
        if d not in ALLOWED_SCALED:
            violations.append({"kind": "distance", "pair": [_fmt(a), _fmt(b)], "d2": str(Fraction(d, 9))})
    present = set(points)
    addable = []
    for key, pool in candidate_pools().items():
        for c in pool:
            if c in present:
                continue
            if all(d2(c, p) in ALLOWED_SCALED for p in points):
                addable.append({"pool": key, "vector": _fmt(c)})
    return Report(variant, len(points), sorted(d // 9 for d in distances), not addable,
                  violations + [{"kind": "addable", **a} for a in addable], comps)


def _fmt(x: Vec) -> list[str]:
    return [str(Fraction(e, SCALE)) for e in x]


def extension_conflict(variant: str) -> dict | None:
    """A pool(ii) vector other than the chosen one, with the member it clashes with."""
    points, _ = extremal_set(variant)
    for c in candidate_pools()["ii"]:
        if c[0] == -4:
            continue
        for p in points:
            d = d2(c, p)
            if d not in ALLOWED_SCALED:
                return {"added": _fmt(c), "member": _fmt(p), "d2": str(Fraction(d, 9))}
    return None


def lattice_part(variant: str) -> Family:
    """The pool(iv) part of an extremal set, mapped into L_{1,6,2}."""
    points, _ = extremal_set(variant)
    iv = set(candidate_pools()["iv"])
    return Family.of(f"iv-{variant}", [to_lattice(p) for p in points if p in iv], Signature(1, 6, 2))
