"""Exact maximum independent set search on bitset adjacency.

Branching picks a maximum-degree vertex of the residual graph (ties to the
smallest index) and explores exclude before include.  The upper bound is a
greedy clique cover, replaced by the exact Konig value whenever the
residual graph is bipartite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from ..diamgraph import iter_bits, two_coloring
from .matching import hopcroft_karp

DEFAULT_TIME_LIMIT = 300.0
DEFAULT_ENUM_LIMIT = 10**6
DEFAULT_VERTEX_LIMIT = 1000


class SolverTimeout(RuntimeError):
    """Raised at the time limit; ``upper`` is None when no bound was reached yet."""

    def __init__(self, lower: int, upper: int | None, nodes: int):
        bound = "?" if upper is None else upper
        super().__init__(f"time limit reached with {lower} <= alpha <= {bound} after {nodes} nodes")
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


class EnumerationLimitError(RuntimeError):
    pass


@dataclass
class SearchStats:
    nodes: int = 0


def popcount(x: int) -> int:
    return x.bit_count()


def _bipartite_matching(adj, left_mask: int, right_mask: int) -> dict[int, int]:
    left = list(iter_bits(left_mask))
    graph = {u: list(iter_bits(adj[u] & right_mask)) for u in left}
    return hopcroft_karp(left, graph)


def koenig_independent(adj, mask: int) -> int | None:
    """Maximum independent subset of a bipartite residual graph, else None."""
    sides = two_coloring(adj, mask)
    if sides is None:
        return None
    left_mask, right_mask = sides
    pairs = _bipartite_matching(adj, left_mask, right_mask)
    mate_r = {v: u for u, v in pairs.items()}
    # alternating search from free left vertices gives Z; cover = (L \ Z) u (R n Z)
    free = [u for u in iter_bits(left_mask) if u not in pairs]
    zl = set(free)
    zr = set()
    stack = list(free)
    while stack:
        u = stack.pop()
        for v in iter_bits(adj[u] & right_mask):
            if v not in zr and pairs.get(u) != v:
                zr.add(v)
                w = mate_r.get(v)
                if w is not None and w not in zl:
                    zl.add(w)
                    stack.append(w)
    independent = 0
    for u in zl:
        independent |= 1 << u
    for v in iter_bits(right_mask):
        if v not in zr:
            independent |= 1 << v
    return independent


def greedy_clique_cover(adj, mask: int) -> int:
    """Number of cliques in a greedy cover of ``mask`` (smallest index first)."""
    count = 0
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        cand = adj[v] & rest
        while cand:
            c = cand & -cand
            u = c.bit_length() - 1
            rest ^= c
            cand &= adj[u]
        count += 1
    return count


def upper_bound(adj, mask: int) -> tuple[int, int | None]:
    """(bound, exact_set); exact_set is a maximum independent set when bipartite."""
    if not mask:
        return 0, 0
    exact = koenig_independent(adj, mask)
    if exact is not None:
        return popcount(exact), exact
    return greedy_clique_cover(adj, mask), None


def greedy_independent(adj, mask: int) -> int:
    """Min-degree greedy independent set, used as the initial incumbent."""
    chosen = 0
    rest = mask
    while rest:
        best_v, best_d = -1, None
        for v in iter_bits(rest):
            d = popcount(adj[v] & rest)
            if best_d is None or d < best_d:
                best_v, best_d = v, d
        chosen |= 1 << best_v
        rest &= ~(adj[best_v] | (1 << best_v))
    return chosen


def _pick_branch_vertex(adj, mask: int) -> tuple[int, int]:
    best_v, best_d = -1, -1
    for v in iter_bits(mask):
        d = popcount(adj[v] & mask)
        if d > best_d:
            best_v, best_d = v, d
    return best_v, best_d


class _Deadline:
    def __init__(self, seconds: float | None, stats: SearchStats):
        self.end = None if seconds is None else time.monotonic() + seconds
        self.stats = stats

    def expired(self) -> bool:
        return self.end is not None and self.stats.nodes % 1024 == 0 and time.monotonic() > self.end


def hoffman_bound(adj, mask: int) -> int | None:
    """floor(N (-lmin) / (d - lmin)) for a d-regular induced graph, else None.

    The eigenvalues are floats, so a small slack is added before flooring;
    that can only loosen the bound.
    """
    verts = list(iter_bits(mask))
    degrees = {popcount(adj[v] & mask) for v in verts}
    if len(degrees) != 1 or 0 in degrees:
        return None
    import numpy as np

    pos = {v: i for i, v in enumerate(verts)}
    A = np.zeros((len(verts), len(verts)))
    for v in verts:
        for u in iter_bits(adj[v] & mask):
            A[pos[v], pos[u]] = 1.0
    lmin = float(np.linalg.eigvalsh(A)[0])
    d = degrees.pop()
    return int(len(verts) * -lmin / (d - lmin) + 1e-6)


class _Reached(Exception):
    pass


def maximum_independent_mask(adj, mask: int, *, time_limit: float | None = DEFAULT_TIME_LIMIT,
                             stats: SearchStats | None = None, cap: int | None = None) -> int:
    """Exact maximum independent subset of ``mask`` (as a bitmask).

    ``cap`` is a known upper bound on the answer; the search stops as soon
    as the incumbent reaches it.
    """
    stats = stats if stats is not None else SearchStats()
    deadline = _Deadline(time_limit, stats)
    best = [greedy_independent(adj, mask)]
    root_bound = upper_bound(adj, mask)[0]
    if cap is not None:
        root_bound = min(root_bound, cap)
    if popcount(best[0]) >= root_bound:
        return best[0]

    def search(P: int, chosen: int):
        stats.nodes += 1
        if deadline.expired():
            raise SolverTimeout(popcount(best[0]), root_bound, stats.nodes)
        # vertices of residual degree <= 1 belong to some maximum completion
        changed = True
        while changed and P:
            changed = False
            for v in iter_bits(P):
                if popcount(adj[v] & P) <= 1:
                    chosen |= 1 << v
                    P &= ~(adj[v] | (1 << v))
                    changed = True
                    break
        if not P:
            improve(chosen)
            return
        bound, exact = upper_bound(adj, P)
        size = popcount(chosen)
        if size + bound <= popcount(best[0]):
            return
        if exact is not None:
            improve(chosen | exact)
            return
        v, _ = _pick_branch_vertex(adj, P)
        search(P & ~(1 << v), chosen)
        search(P & ~(adj[v] | (1 << v)), chosen | (1 << v))

    def improve(found: int):
        if popcount(found) > popcount(best[0]):
            best[0] = found
            if popcount(found) >= root_bound:
                raise _Reached

    try:
        search(mask, 0)
    except _Reached:
        pass
    return best[0]


def enumerate_independent(adj, mask: int, min_size: int, *, max_size: int | None = None,
                          limit: int = DEFAULT_ENUM_LIMIT, time_limit: float | None = DEFAULT_TIME_LIMIT,
                          stats: SearchStats | None = None) -> list[int]:
    """Every independent subset of ``mask`` with min_size <= size <= max_size.

    Complete by construction: each branch splits on one vertex (out / in), so
    every qualifying set is reached exactly once.  Results are sorted.
    """
    stats = stats if stats is not None else SearchStats()
    deadline = _Deadline(time_limit, stats)
    out: list[int] = []
    top = max_size

    def emit(s: int):
        out.append(s)
        if len(out) > limit:
            raise EnumerationLimitError(f"more than {limit} independent sets of size >= {min_size}")

    def search(P: int, chosen: int, size: int):
        stats.nodes += 1
        if deadline.expired():
            raise SolverTimeout(min_size, min_size, stats.nodes)
        if top is not None and size > top:
            return
        if size + popcount(P) < min_size:
            return
        v, d = _pick_branch_vertex(adj, P) if P else (-1, 0)
        if d <= 0:
            free = list(iter_bits(P))
            lo = max(0, min_size - size)
            hi = len(free) if top is None else min(len(free), top - size)
            for r in range(lo, hi + 1):
                for combo in combinations(free, r):
                    s = chosen
                    for u in combo:
                        s |= 1 << u
                    emit(s)
            return
        bound, _ = upper_bound(adj, P)
        if size + bound < min_size:
            return
        search(P & ~(1 << v), chosen, size)
        search(P & ~(adj[v] | (1 << v)), chosen | (1 << v), size + 1)

    search(mask, 0, 0)
    out.sort(key=_mask_key)
    return out


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))
