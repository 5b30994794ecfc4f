"""Canonical forms of families under coordinate permutations.

Columns are first labelled by an isomorphism-invariant refinement (value
counts, then joint value counts against the other columns' labels, iterated
to a fixpoint).  The canonical key of a permutation is the pair (column
labels in position order, sorted-prefix encoding); the minimum over S_n of
that key is reached only by permutations listing the columns in label
order, so restricting the search to those permutations loses nothing.

Within that restriction positions are filled left to right.  After p
positions the sorted list of row prefixes of length p is fixed, and the
encoding is the concatenation of these lists for p = 1..n, so any branch
whose block exceeds the incumbent's at some level is cut.  The last block
is the row-sorted permuted member matrix, so equal keys mean equal images.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .families import Family
from .lattice import TritVector, format_trits

MAX_CANON_N = 16
DEFAULT_WIDTH_LIMIT = 200_000


class CanonError(ValueError):
    pass


def column_labels(rows: Sequence[tuple[int, ...]], n: int, refine: bool = True) -> list[int]:
    """Invariant column colouring; equal labels mark columns that may be swapped."""
    counts = [tuple(sum(1 for r in rows if r[c] == v) for v in (-1, 0, 1)) for c in range(n)]
    labels = _rank(counts)
    if not refine:
        return labels
    while True:
        sigs = []
        for c in range(n):
            profile = Counter()
            for d in range(n):
                if d == c:
                    continue
                joint = Counter((r[c], r[d]) for r in rows)
                profile[(labels[d], tuple(joint[(a, b)] for a in (-1, 0, 1) for b in (-1, 0, 1)))] += 1
            sigs.append((labels[c], tuple(sorted(profile.items()))))
        new = _rank(sigs)
        if len(set(new)) == len(set(labels)):
            return new
        labels = new


def _rank(keys: list) -> list[int]:
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


@dataclass(frozen=True)
class CanonicalForm:
    labels: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]  # row-sorted image under ``perm``
    perm: tuple[int, ...]  # position p of the image holds original column perm[p]
    automorphisms: int

    @property
    def bytes(self) -> bytes:
        head = bytes(self.labels)
        body = bytes(e + 1 for r in self.rows for e in r)
        return len(self.labels).to_bytes(1, "big") + head + body

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    @property
    def key(self):
        return (self.labels, self.rows)

    def certificate(self) -> dict:
        return {
            "matrix": [format_trits(r) for r in self.rows],
            "permutation": cycle_notation(self.perm),
        }


def cycle_notation(perm: Sequence[int]) -> str:
    """1-based cycle notation of the map p -> perm[p]; '()' for the identity."""
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, j = [], start
        while j not in seen:
            seen.add(j)
            cycle.append(j + 1)
            j = perm[j]
        out.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(out) or "()"


def _rows(F) -> list[tuple[int, ...]]:
    return [x.entries if isinstance(x, TritVector) else tuple(x) for x in F]


def _n_of(F: Family) -> int:
    if F.signature is not None:
        return F.signature.n
    if not F.members:
        raise CanonError("cannot infer the length of an empty family")
    return len(F.members[0])


def canonical_form(F: Family, *, prune: bool = True, width_limit: int = DEFAULT_WIDTH_LIMIT) -> CanonicalForm:
    """Least (labels, encoding) key over all column permutations of F."""
    rows = _rows(F)
    n = _n_of(F)
    if n > MAX_CANON_N:
        raise CanonError(f"n = {n} exceeds the exact canonicalization limit {MAX_CANON_N}")
    labels = column_labels(rows, n)
    if not prune:
        return _brute_force(rows, n, labels)
    slots = sorted(labels)
    # frontier entries: (perm so far, prefix codes per row)
    frontier = [((), [0] * len(rows))]
    for p in range(n):
        want = slots[p]
        best_block = None
        nxt = []
        for perm, codes in frontier:
            used = set(perm)
            for c in range(n):
                if c in used or labels[c] != want:
                    continue
                new_codes = [code * 3 + r[c] + 1 for code, r in zip(codes, rows)]
                block = sorted(new_codes)
                if best_block is None or block < best_block:
                    best_block = block
                    nxt = [(perm + (c,), new_codes)]
                elif block == best_block:
                    nxt.append((perm + (c,), new_codes))
        if len(nxt) > width_limit:
            raise CanonError(f"canonical search width {len(nxt)} exceeds {width_limit}")
        frontier = nxt
    perm = min(p for p, _ in frontier)
    image = tuple(sorted(tuple(r[j] for j in perm) for r in rows))
    return CanonicalForm(tuple(sorted(labels)), image, perm, len(frontier))


def _brute_force(rows, n: int, labels: list[int]) -> CanonicalForm:
    """Minimum over every permutation in S_n (the unpruned definition)."""
    best = None
    count = 0
    for perm in permutations(range(n)):
        lab = tuple(labels[j] for j in perm)
        image = tuple(sorted(tuple(r[j] for j in perm) for r in rows))
        enc = tuple(tuple(sorted(tuple(r[:p]) for r in image)) for p in range(1, n + 1))
        key = (lab, enc)
        if best is None or key < best[0]:
            best = (key, perm, image)
            count = 1
        elif key == best[0]:
            count += 1
    (lab, _), perm, image = best
    return CanonicalForm(lab, image, perm, count)


def permute_family(F: Family, perm: Sequence[int]) -> Family:
    return F.permuted(perm)


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Permutation p -> a[b[p]]; permuting by a then by b equals permuting by compose(a, b)."""
    return tuple(a[j] for j in b)


def inverse(perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for p, j in enumerate(perm):
        out[j] = p
    return tuple(out)


def are_isomorphic(F: Family, G: Family) -> tuple[bool, tuple[int, ...] | None]:
    """(isomorphic?, sigma) with F.permuted(sigma) == G when isomorphic."""
    if F.signature != G.signature:
        raise ValueError(f"signature mismatch: {F.signature} vs {G.signature}")
    if len(F) != len(G):
        return False, None
    cf, cg = canonical_form(F), canonical_form(G)
    if cf != cg:
        return False, None
    # F.permuted(cf.perm) == G.permuted(cg.perm)  =>  F.permuted(cf.perm o cg.perm^-1) == G
    sigma = compose(cf.perm, inverse(cg.perm))
    return True, sigma


@dataclass
class IsoClass:
    form: CanonicalForm
    representative: Family
    members: list[Family]

    @property
    def size(self) -> int:
        return len(self.members)


def classify(families: Iterable[Family]) -> list[IsoClass]:
    """Partition into isomorphism classes, ordered by canonical form.

    The representative is the canonical image itself, so it is the member of
    the class with the least form.
    """
    families = list(families)
    sigs = {f.signature for f in families}
    if len(sigs) > 1:
        raise ValueError(f"families span several signatures: {sorted(map(str, sigs))}")
    buckets: dict[CanonicalForm, list[Family]] = {}
    for f in families:
        buckets.setdefault(canonical_form(f), []).append(f)
    out = []
    for form in sorted(buckets):
        members = buckets[form]
        rep = Family.of(members[0].name, form.rows, members[0].signature)
        out.append(IsoClass(form, rep, members))
    return out


def stabilizer_order(F: Family) -> int:
    """Number of coordinate permutations fixing F setwise."""
    n = _n_of(F)
    if n > 12:
        raise CanonError(f"n = {n} exceeds the stabilizer limit 12")
    return canonical_form(F).automorphisms


def orbit(F: Family) -> list[Family]:
    """Every distinct image of F under S_n, sorted by member lists."""
    n = _n_of(F)
    seen = {}
    for perm in permutations(range(n)):
        img = F.permuted(perm)
        seen.setdefault(img.members, img)
    return [seen[k] for k in sorted(seen)]


def orbit_length(F: Family) -> int:
    from math import factorial
    return factorial(_n_of(F)) // stabilizer_order(F)


def certificate_json(F: Family) -> str:
    form = canonical_form(F)
    return json.dumps({"name": F.name, **form.certificate()}, separators=(",", ":"))
