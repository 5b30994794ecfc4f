"""Bipartite matchings, the Konig bound, and forced-vertex propagation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..diamgraph import BipartiteView, DiameterGraph, bits_of, iter_bits

_INF = float("inf")


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]  # (left, right), sorted by left

    def __len__(self):
        return len(self.pairs)

    def mate(self) -> dict[int, int]:
        out = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out

    def is_valid_in(self, view: BipartiteView) -> bool:
        edges = set(view.edges)
        used = [x for p in self.pairs for x in p]
        return all(p in edges for p in self.pairs) and len(used) == len(set(used))


def hopcroft_karp(left: list[int], graph: dict[int, list[int]]) -> dict[int, int]:
    """Maximum matching; returns left -> right.  Deterministic in the list orders."""
    pair_l: dict[int, int] = {}
    pair_r: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if u in pair_l:
                dist[u] = _INF
            else:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in graph[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in graph[u]:
            w = pair_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u] = v
                pair_r[v] = u
                return True
        dist[u] = _INF
        return False

    while bfs():
        for u in left:
            if u not in pair_l:
                dfs(u)
    return pair_l


def max_matching(view: BipartiteView) -> Matching:
    adjacency = view.left_adjacency()
    pairs = hopcroft_karp(sorted(view.left), adjacency)
    return Matching(tuple(sorted(pairs.items())))


def koenig_cover(view: BipartiteView, matching: Matching) -> frozenset[int]:
    """Minimum vertex cover from a maximum matching (Konig's construction)."""
    adjacency = view.left_adjacency()
    mate = matching.mate()
    free_left = [u for u in sorted(view.left) if u not in mate]
    seen_l, seen_r = set(free_left), set()
    queue = deque(free_left)
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen_r and mate.get(u) != v:
                seen_r.add(v)
                w = mate.get(v)
                if w is not None and w not in seen_l:
                    seen_l.add(w)
                    queue.append(w)
    return frozenset((view.left - seen_l) | seen_r)


def matching_bound(g: DiameterGraph, view: BipartiteView) -> int:
    """|V| - |maximum matching|: an upper bound on the independence number.

    Each matched pair contributes at most one vertex; when the view carries
    every edge of ``g`` the bound is exact by Konig's theorem.
    """
    covered = view.left | view.right
    if len(covered) != g.order:
        raise ValueError("the view must cover every vertex of the graph")
    return g.order - len(max_matching(view))


@dataclass(frozen=True)
class Propagation:
    closure: frozenset[int]
    excluded: frozenset[int]
    contradiction: tuple[int, int] | None = None

    @property
    def consistent(self) -> bool:
        return self.contradiction is None


def propagate_matching(g: DiameterGraph, matching: Matching, partial, *,
                       include_unmatched: bool = True) -> Propagation:
    """Close ``partial`` under the tight-matching forcing rule.

    Assume the target independent set has size |V| - |matching|.  Then every
    matched edge holds exactly one of its ends and every unmatched vertex is
    in the set.  For z in the set, a neighbour y of z is out, so the mate of y
    is forced in; repeat to a fixpoint.  A forced vertex adjacent to the set
    is reported as a contradiction (a normal outcome).
    """
    mate = matching.mate()
    seeds = set(partial)
    if include_unmatched:
        seeds |= {v for v in range(g.order) if v not in mate}
    closure = set()
    queue = deque(sorted(seeds))
    while queue:
        z = queue.popleft()
        if z in closure:
            continue
        clash = g.adj[z] & bits_of(closure)
        if clash:
            other = (clash & -clash).bit_length() - 1
            return Propagation(frozenset(closure | {z}), frozenset(), (min(z, other), max(z, other)))
        closure.add(z)
        for y in iter_bits(g.adj[z]):
            x = mate.get(y)
            if x is not None and x not in closure:
                queue.append(x)
    excluded = 0
    for z in closure:
        excluded |= g.adj[z]
    return Propagation(frozenset(closure), frozenset(iter_bits(excluded)))
