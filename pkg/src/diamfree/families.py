"""Explicit extremal families in L_mkl and the closed-form values of M_mkl."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .lattice import Signature, TritVector, generate, squared_distance


@dataclass(frozen=True)
class Family:
    """A named subset of L_signature; members are kept sorted and unique."""

    signature: Signature | None
    name: str
    members: tuple[TritVector, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        if self.signature is not None:
            for x in members:
                if x.signature != self.signature:
                    raise ValueError(f"{x} is not a point of {self.signature}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, name: str, members: Iterable, signature: Signature | None = None, **meta) -> "Family":
        members = [m if isinstance(m, TritVector) else
                   TritVector.parse(m) if isinstance(m, str) else TritVector(tuple(m)) for m in members]
        if signature is None and members:
            signature = members[0].signature
        return cls(signature, name, tuple(members), dict(meta))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.member_set

    @property
    def member_set(self) -> frozenset[TritVector]:
        return frozenset(self.members)

    @property
    def n(self) -> int:
        return self.signature.n

    def renamed(self, name: str, **meta) -> "Family":
        return Family(self.signature, name, self.members, {**self.meta, **meta})

    def permuted(self, perm: Sequence[int], name: str | None = None) -> "Family":
        return Family(self.signature, name or self.name, tuple(x.permuted(perm) for x in self.members),
                      dict(self.meta))

    def union(self, other: "Family", name: str) -> "Family":
        return Family(self.signature, name, self.members + other.members)

    def minus(self, other: Iterable[TritVector], name: str) -> "Family":
        drop = set(other)
        return Family(self.signature, name, tuple(x for x in self.members if x not in drop))

    def max_squared_distance(self) -> int:
        ms = self.members
        return max((squared_distance(ms[i], ms[j]) for i in range(len(ms)) for j in range(i + 1, len(ms))),
                   default=0)

    def to_dict(self) -> dict:
        return {
            "signature": self.signature.as_list() if self.signature else None,
            "name": self.name,
            "members": [str(x) for x in self.members],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Family":
        sig = Signature(*data["signature"]) if data.get("signature") else None
        return cls(sig, data["name"], tuple(TritVector.parse(s) for s in data["members"]))

    @classmethod
    def loads(cls, text: str) -> "Family":
        return cls.from_dict(json.loads(text))


def prepend_zero(family: Family, name: str) -> Family:
    """{(0, x) | x in family}, living in L_{m,k+1,l}."""
    sig = family.signature
    return Family(Signature(sig.m, sig.k + 1, sig.l), name, tuple(TritVector((0,) + x.entries) for x in family))


# --- closed forms ---------------------------------------------------------

def frak_M(k: int) -> int:
    """binom(k+3, 3) + 2, the maximum size in L_{1k2}.  k = 0 is allowed as the t = 6 edge case."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return comb(k + 3, 3) + 2


def frak_M_general(m: int, k: int, l: int) -> int:
    """Lower-bound formula binom(m+l-1, m-1) binom(k+m+l, m+l) + binom(m+l-1, m)."""
    if not 0 < m < l:
        raise ValueError("formula requires 0 < m < l")
    return comb(m + l - 1, m - 1) * comb(k + m + l, m + l) + comb(m + l - 1, m)


@dataclass(frozen=True)
class BoundEntry:
    value: int
    kind: str  # "exact" | "lower_bound"
    source: str
    meta: dict = field(default_factory=dict, compare=False, hash=False)


def M_exact(sig: Signature) -> BoundEntry | None:
    """Proven value of M_mkl, or None when no closed form applies."""
    if sig.cardinality() < 2:
        return None
    m, k, l = sig.m, sig.k, sig.l
    n = sig.n
    if m == l:
        return BoundEntry(comb(n, m) * comb(k + m, m) // 2, "exact", "antipodal-pairs")
    lo, hi = min(m, l), max(m, l)
    if lo + k <= hi:
        return BoundEntry(comb(n - 1, lo + k - 1) * comb(lo + k, lo), "exact", "intersecting-supports")
    if (lo, hi) == (1, 2):
        return BoundEntry(frak_M(k), "exact", "one-zero-two")
    return None


def bound_table(max_n: int) -> dict[Signature, BoundEntry]:
    """Exact values where proven, the recursive lower bound elsewhere (m < l)."""
    table: dict[Signature, BoundEntry] = {}
    for n in range(2, max_n + 1):
        for m in range(n + 1):
            for l in range(n + 1 - m):
                sig = Signature(m, n - m - l, l)
                if sig.cardinality() < 2:
                    continue
                entry = M_exact(sig)
                if entry is None:
                    lo, hi = min(m, l), max(m, l)
                    if 0 < lo < hi:
                        k = sig.k
                        entry = BoundEntry(
                            recursive_family_size(lo, k, hi), "lower_bound", "recursive-construction",
                            {"formula": frak_M_general(lo, k, hi),
                             "open_range": [hi - lo + 1, lo * comb(lo + hi, lo) - lo - hi],
                             "open_range_as_printed": [lo - hi + 1, lo * comb(lo + hi, lo) - lo - hi]})
                if entry is not None:
                    table[sig] = entry
    return table


# --- the subsets S_k(i), T_k(i), U_k(i) of L_{1k2} ------------------------
# Coordinates are 1-based in names and docstrings, 0-based in code.

def _l1k2(k: int) -> list[TritVector]:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return generate(Signature(1, k, 2))


def _check_index(k: int, i: int, lo: int):
    if not lo <= i <= k + 2:
        raise ValueError(f"index {i} out of range [{lo}, {k + 2}] for k={k}")


def S(k: int, i: int) -> Family:
    """x_1 = ... = x_{i-1} = 0 and x_i = -1."""
    _check_index(k, i, 1)
    members = [x for x in _l1k2(k) if all(e == 0 for e in x[:i - 1]) and x[i - 1] == -1]
    return Family.of(f"S_{k}({i})", members, Signature(1, k, 2))


def T(k: int, i: int) -> Family:
    """x_1 = ... = x_{i-1} = 0 and x_i = +1."""
    _check_index(k, i, 1)
    members = [x for x in _l1k2(k) if all(e == 0 for e in x[:i - 1]) and x[i - 1] == 1]
    return Family.of(f"T_{k}({i})", members, Signature(1, k, 2))


def U(k: int, i: int) -> Family:
    """x_1 = 1 and the -1 sits at some position l in 2..i with the other +1 after it."""
    _check_index(k, i, 2)
    members = []
    for x in _l1k2(k):
        if x[0] != 1:
            continue
        neg = x.entries.index(-1) + 1
        other = max(p for p, e in enumerate(x.entries, 1) if e == 1)
        if 2 <= neg <= i and other > neg:
            members.append(x)
    return Family.of(f"U_{k}({i})", members, Signature(1, k, 2))


def script_S1(k: int) -> Family:
    """x_1 = 1, x_k = 1 and the -1 strictly after position k."""
    members = [x for x in _l1k2(k)
               if x[0] == 1 and x[k - 1] == 1 and x.entries.index(-1) + 1 > k]
    return Family.of(f"S1_{k}", members, Signature(1, k, 2))


def script_S2(k: int) -> Family:
    """x_1 = 1, x_{k-1} = 1 and the -1 at position k or later.

    The printed condition is "-1 after position k", but the four-row table
    pairing this set with S_k(1) uses a vector with -1 at position k, and that
    vector is a genuine candidate; the inclusive reading is the one that
    matches the candidate set computed from the graph.
    """
    if k < 3:
        raise ValueError("script_S2 needs k >= 3")
    members = [x for x in _l1k2(k)
               if x[0] == 1 and x[k - 2] == 1 and x.entries.index(-1) + 1 >= k]
    return Family.of(f"S2_{k}", members, Signature(1, k, 2))


def _union(name: str, k: int, parts: Iterable[Family]) -> Family:
    members = [x for p in parts for x in p]
    return Family.of(name, members, Signature(1, k, 2))


def X(k: int) -> Family:
    if k < 1:
        raise ValueError("X_k is defined for k >= 1")
    fam = _union(f"X_{k}", k, [T(k, k + 1)] + [S(k, i) for i in range(1, k + 2)])
    return fam.renamed(fam.name, construction="T_k(k+1) u S_k(1..k+1)")


def Y(k: int) -> Family:
    if k < 1:
        raise ValueError("Y_k is defined for k >= 1")
    if k == 1:
        return T(1, 1).renamed("Y_1", construction="T_1(1)")
    fam = _union(f"Y_{k}", k, [T(k, k)] + [S(k, i) for i in range(1, k)])
    return fam.renamed(fam.name, construction="T_k(k) u S_k(1..k-1)")


def Z(k: int) -> Family:
    if k < 2:
        raise ValueError("Z_k is defined for k >= 2")
    if k == 2:
        return T(2, 1).renamed("Z_2", construction="T_2(1)")
    fam = _union(f"Z_{k}", k, [T(k, k - 1)] + [S(k, i) for i in range(1, k - 1)])
    return fam.renamed(fam.name, construction="T_k(k-1) u S_k(1..k-2)")


def lifted(prev: Family, k: int, name: str) -> Family:
    """{(0, x) | x in prev} u N_1(L_{1k2}, -1)."""
    return _union(name, k, [prepend_zero(prev, "tmp"), S(k, 1)])


def X_recursive(k: int) -> Family:
    return X(1) if k == 1 else lifted(X_recursive(k - 1), k, f"X_{k}")


def Y_recursive(k: int) -> Family:
    return Y(1) if k == 1 else lifted(Y_recursive(k - 1), k, f"Y_{k}")


def Z_recursive(k: int) -> Family:
    return Z(2) if k == 2 else lifted(Z_recursive(k - 1), k, f"Z_{k}")


def primed(fam: Family) -> Family:
    """X_k' = X_k minus S_k(1) (likewise for Y, Z)."""
    k = fam.signature.k
    return fam.minus(S(k, 1), fam.name + "'")


def V2() -> Family:
    extra = ["-00++", "-0+0+", "-0++0", "-++00", "+-+00"]
    members = list(primed(X(2))) + [TritVector.parse(s) for s in extra]
    return Family.of("V_2", members, Signature(1, 2, 2), construction="X_2' plus five listed vectors")


def W2() -> Family:
    extra = ["-++00", "-+0+0", "-+00+", "-00++", "++-00"]
    members = list(primed(Y(2))) + [TritVector.parse(s) for s in extra]
    return Family.of("W_2", members, Signature(1, 2, 2), construction="Y_2' plus five listed vectors")


# --- the matchings used to bound the extension step -----------------------

def _vec(n: int, entries: dict[int, int]) -> TritVector:
    """Vector of length n with the given 1-based positions set."""
    out = [0] * n
    for p, e in entries.items():
        out[p - 1] = e
    return TritVector(tuple(out))


def _staircase_pairs(k: int, top: int) -> list[tuple[TritVector, TritVector]]:
    """Rows x_i = x_j = 1 (2 <= i <= top, i < j < n) -> y_i = -1, y_{j+1} = 1,
    and x_i = x_n = 1 -> y_i = -1, y_{i+1} = 1."""
    n = k + 3
    pairs = []
    for i in range(2, top + 1):
        for j in range(i + 1, n):
            pairs.append((_vec(n, {1: -1, i: 1, j: 1}), _vec(n, {1: 1, i: -1, j + 1: 1})))
        pairs.append((_vec(n, {1: -1, i: 1, n: 1}), _vec(n, {1: 1, i: -1, i + 1: 1})))
    return pairs


@dataclass(frozen=True)
class MatchingCase:
    """Candidate set, isolated vertices and explicit pairing for one extension case."""

    label: str
    k: int
    base: Family  # X_k', Y_k' or Z_k'
    candidates: Family  # S_k(1) u (other side)
    left: Family  # S_k(1)
    isolated: tuple[TritVector, ...]
    pairs: tuple[tuple[TritVector, TritVector], ...]
    unmatched: tuple[TritVector, ...] = ()


def matching_case(label: str, k: int) -> MatchingCase:
    n = k + 3
    s1 = S(k, 1)
    if label == "i":
        if k < 2:
            raise ValueError("case (i) needs k >= 2")
        right = U(k, k)
        isolated = [_vec(n, {1: -1, k + 2: 1, k + 3: 1}), _vec(n, {1: -1, k + 1: 1, k + 3: 1}),
                    _vec(n, {1: -1, k + 1: 1, k + 2: 1})]
        pairs = _staircase_pairs(k, k)
        unmatched = []
        base = primed(X(k))
    elif label == "ii":
        if k < 2:
            raise ValueError("case (ii) needs k >= 2")
        extra = script_S1(k)
        right = Family.of("U", list(U(k, k - 1)) + list(extra), Signature(1, k, 2)) if k >= 3 else extra
        isolated = [_vec(n, {1: -1, k: 1, j: 1}) for j in (k + 1, k + 2, k + 3)]
        pairs = _staircase_pairs(k, k - 1) + [
            (_vec(n, {1: -1, k + 1: 1, k + 2: 1}), _vec(n, {1: 1, k: 1, k + 1: -1})),
            (_vec(n, {1: -1, k + 2: 1, k + 3: 1}), _vec(n, {1: 1, k: 1, k + 2: -1})),
            (_vec(n, {1: -1, k + 1: 1, k + 3: 1}), _vec(n, {1: 1, k: 1, k + 3: -1})),
        ]
        unmatched = []
        base = primed(Y(k))
    elif label == "iii":
        if k < 3:
            raise ValueError("case (iii) needs k >= 3")
        extra = script_S2(k)
        right = Family.of("U", list(U(k, k - 2)) + list(extra), Signature(1, k, 2)) if k >= 4 else extra
        isolated = [_vec(n, {1: -1, k - 1: 1, j: 1}) for j in (k, k + 1, k + 2, k + 3)]
        pairs = _staircase_pairs(k, k - 2) + [
            (_vec(n, {1: -1, k: 1, k + 1: 1}), _vec(n, {1: 1, k - 1: 1, k: -1})),
            (_vec(n, {1: -1, k + 1: 1, k + 2: 1}), _vec(n, {1: 1, k - 1: 1, k + 1: -1})),
            (_vec(n, {1: -1, k + 2: 1, k + 3: 1}), _vec(n, {1: 1, k - 1: 1, k + 2: -1})),
            (_vec(n, {1: -1, k: 1, k + 3: 1}), _vec(n, {1: 1, k - 1: 1, k + 3: -1})),
        ]
        unmatched = [_vec(n, {1: -1, k: 1, k + 2: 1}), _vec(n, {1: -1, k + 1: 1, k + 3: 1})]
        base = primed(Z(k))
    else:
        raise ValueError(f"unknown case {label!r}")
    candidates = Family.of(f"C({label})_{k}", list(s1) + list(right), Signature(1, k, 2))
    return MatchingCase(label, k, base, candidates, s1, tuple(isolated), tuple(pairs), tuple(unmatched))


# --- section 4 style recursive construction -------------------------------

def recursive_family(m: int, k: int, l: int) -> Family:
    """X_k = {(0, x') | x' in X_{k-1}} u N_1(L_mkl, -1), seeded at k = l - m.

    The seed is the star N_1(L, -1) u N_1(L, 0), a largest set when m + k <= l.
    """
    if not 0 < m < l:
        raise ValueError("construction requires 0 < m < l")
    base_k = l - m
    if k < base_k:
        raise ValueError(f"k must be at least l - m = {base_k}")
    sig = Signature(m, base_k, l)
    fam = Family.of(f"R_{m}{base_k}{l}", [x for x in generate(sig) if x[0] in (-1, 0)], sig)
    for kk in range(base_k + 1, k + 1):
        sig = Signature(m, kk, l)
        star = [x for x in generate(sig) if x[0] == -1]
        fam = Family.of(f"R_{m}{kk}{l}", list(prepend_zero(fam, "tmp")) + star, sig)
    return fam.renamed(fam.name, construction="recursive", seed_k=base_k)


def recursive_family_size(m: int, k: int, l: int) -> int:
    """Closed form of len(recursive_family(m, k, l)): seed size plus the added stars."""
    base_k = l - m
    n0 = m + base_k + l
    size = comb(n0 - 1, m + base_k - 1) * comb(m + base_k, m)
    for kk in range(base_k + 1, k + 1):
        n = m + kk + l
        size += comb(n - 1, m - 1) * comb(n - m, l)
    return size
