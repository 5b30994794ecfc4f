"""Signed ternary point sets L_mkl and exact squared-distance arithmetic.

A point of L_mkl is a length-n vector over {-1, 0, +1} with exactly m entries
-1, k entries 0 and l entries +1.  Every distance here is an exact squared
integer; nothing in the core touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

DEFAULT_ENUMERATION_LIMIT = 10**7

_TO_CHAR = {-1: "-", 0: "0", 1: "+"}
_FROM_CHAR = {"-": -1, "0": 0, "+": 1}


class CapacityError(ValueError):
    """Raised when an enumeration would exceed the configured limit."""


@dataclass(frozen=True, order=True)
class Signature:
    m: int
    k: int
    l: int

    def __post_init__(self):
        if min(self.m, self.k, self.l) < 0:
            raise ValueError(f"negative entry count in {self!r}")
        if self.n < 1:
            raise ValueError("signature must describe vectors of length >= 1")

    @property
    def n(self) -> int:
        return self.m + self.k + self.l

    def cardinality(self) -> int:
        """Multinomial n! / (m! k! l!)."""
        return factorial(self.n) // (factorial(self.m) * factorial(self.k) * factorial(self.l))

    def negated(self) -> "Signature":
        return Signature(self.l, self.k, self.m)

    def as_list(self) -> list[int]:
        return [self.m, self.k, self.l]

    def __str__(self):
        return f"L({self.m},{self.k},{self.l})"


@dataclass(frozen=True, order=True)
class TritVector:
    """A point of some L_mkl, carried as entries plus two coordinate bitmasks.

    Ordering is lexicographic over entries with -1 < 0 < +1.
    """

    entries: tuple[int, ...]
    neg: int = field(default=0, compare=False, repr=False)
    pos: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        entries = tuple(self.entries)
        neg = pos = 0
        for i, e in enumerate(entries):
            if e == -1:
                neg |= 1 << i
            elif e == 1:
                pos |= 1 << i
            elif e != 0:
                raise ValueError(f"entry {e!r} not in {{-1, 0, 1}}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "pos", pos)

    @classmethod
    def parse(cls, text: str) -> "TritVector":
        try:
            return cls(tuple(_FROM_CHAR[c] for c in text.strip()))
        except KeyError as exc:
            raise ValueError(f"bad trit character {exc.args[0]!r} in {text!r}") from None

    def __str__(self):
        return "".join(_TO_CHAR[e] for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def signature(self) -> Signature:
        return Signature(self.neg.bit_count(), len(self.entries) - self.neg.bit_count() - self.pos.bit_count(),
                         self.pos.bit_count())

    def permuted(self, perm: Sequence[int]) -> "TritVector":
        """Coordinate p of the result is coordinate perm[p] of self."""
        return TritVector(tuple(self.entries[j] for j in perm))

    def __neg__(self):
        return TritVector(tuple(-e for e in self.entries))


def format_trits(v: Iterable[int]) -> str:
    return "".join(_TO_CHAR[e] for e in v)


def parse_trits(text: str) -> TritVector:
    return TritVector.parse(text)


def _arrangements(counts: list[int], n: int, prefix: list[int], out: list):
    if len(prefix) == n:
        out.append(TritVector(tuple(prefix)))
        return
    for idx, value in enumerate((-1, 0, 1)):
        if counts[idx]:
            counts[idx] -= 1
            prefix.append(value)
            _arrangements(counts, n, prefix, out)
            prefix.pop()
            counts[idx] += 1


def generate(sig: Signature, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[TritVector]:
    """All vectors of L_sig in lexicographic order (-1 < 0 < +1)."""
    size = sig.cardinality()
    if size > limit:
        raise CapacityError(f"{sig} has {size} points, above the enumeration limit {limit}")
    out: list[TritVector] = []
    _arrangements([sig.m, sig.k, sig.l], sig.n, [], out)
    return out


def squared_distance(x: TritVector, y: TritVector) -> int:
    """Exact sum of (x_i - y_i)^2, computed from the sign masks."""
    if len(x.entries) != len(y.entries):
        raise ValueError(f"length mismatch: {len(x.entries)} vs {len(y.entries)}")
    opposite = (x.neg & y.pos).bit_count() + (x.pos & y.neg).bit_count()
    half = ((x.neg | x.pos) ^ (y.neg | y.pos)).bit_count()
    return 4 * opposite + half


@dataclass(frozen=True)
class DistanceProfile:
    squared_distances: tuple[int, ...]

    @property
    def diameter_sq(self) -> int:
        return self.squared_distances[-1]

    @property
    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.squared_distances)))


def distance_profile(points: Sequence[TritVector]) -> DistanceProfile:
    if len(points) < 2:
        raise ValueError("a distance profile needs at least 2 points")
    ds = sorted(squared_distance(x, y) for x, y in combinations(points, 2))
    return DistanceProfile(tuple(ds))


def diameter_sq(points: Sequence[TritVector]) -> int:
    if len(points) < 2:
        raise ValueError("diameter needs at least 2 points")
    return max(squared_distance(x, y) for x, y in combinations(points, 2))


def lattice_diameter_sq(sig: Signature) -> int:
    """Closed-form squared diameter of L_sig, checked against brute force in tests.

    Two points are farthest apart when as many -1/+1 entries as possible face
    each other and the remaining nonzero entries sit opposite zeros.
    """
    m, k, l = sig.m, sig.k, sig.l
    if sig.cardinality() < 2:
        raise ValueError(f"{sig} has a single point")
    best = 0
    # a = number of positions (-1 in x, +1 in y), b = (+1 in x, -1 in y)
    for a in range(min(m, l) + 1):
        for b in range(min(m, l) + 1):
            # remaining sign entries in x: m-a of -1, l-b of +1; in y: m-b of -1, l-a of +1
            # positions with equal signs cost 0, sign vs zero costs 1
            rest_x = (m - a) + (l - b)
            rest_y = (m - b) + (l - a)
            free = sig.n - a - b
            # overlap forced when nonzero entries of x and y cannot be kept apart
            overlap = max(0, rest_x + rest_y - free)
            # overlapping nonzeros pair up; opposite signs would mean larger a/b,
            # so count them as equal-sign overlaps (cost 0)
            if overlap > min(rest_x, rest_y):
                continue
            if not _overlap_feasible(m - a, l - b, m - b, l - a, overlap):
                continue
            best = max(best, 4 * (a + b) + rest_x + rest_y - 2 * overlap)
    return best


def _overlap_feasible(xn: int, xp: int, yn: int, yp: int, overlap: int) -> bool:
    # overlaps must match equal signs: -1 with -1 and +1 with +1
    return overlap <= min(xn, yn) + min(xp, yp)


def zero_column_counts(X: Iterable[TritVector]) -> dict[int, list[int]]:
    """Per-coordinate counts n_i(X, j) for j in (-1, 0, +1)."""
    members = list(X)
    if not members:
        raise ValueError("column counts of an empty family")
    n = len(members[0])
    counts = {-1: [0] * n, 0: [0] * n, 1: [0] * n}
    for x in members:
        for i, e in enumerate(x.entries):
            counts[e][i] += 1
    return counts


def column_slice(points: Iterable[TritVector], coord: int, value: int) -> list[TritVector]:
    """N_i(X, j): members whose coordinate ``coord`` equals ``value``."""
    return [x for x in points if x.entries[coord] == value]
