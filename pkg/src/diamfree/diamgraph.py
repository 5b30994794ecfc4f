"""Diameter graphs over lattice point sets, adjacency stored as int bitsets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import Signature, TritVector, diameter_sq, generate, squared_distance


class BipartitionError(ValueError):
    """A proposed side of a bipartite view contains an edge."""

    def __init__(self, u: int, v: int):
        super().__init__(f"vertices {u} and {v} lie on the same side but are adjacent")
        self.pair = (u, v)


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class DiameterGraph:
    """Graph on ``vertices`` joining pairs at squared distance >= ``threshold_sq``.

    ``diameter_sq`` is the squared diameter of the ground set the graph was
    built from; induced subgraphs keep it (and the threshold) unchanged.
    ``origin`` maps local indices back to indices in the ground graph.
    """

    vertices: tuple[TritVector, ...]
    adj: tuple[int, ...]
    threshold_sq: int
    diameter_sq: int
    origin: tuple[int, ...] = field(default=())
    signature: Signature | None = None

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adj) for v in iter_bits(nb >> (u + 1) << (u + 1))]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def index(self) -> dict[TritVector, int]:
        return {x: i for i, x in enumerate(self.vertices)}

    def is_independent(self, indices: Iterable[int]) -> bool:
        mask = bits_of(indices)
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def is_full_lattice(self) -> bool:
        """True when the vertex list is exactly L_signature in generation order."""
        if self.signature is None or self.signature.cardinality() != len(self.vertices):
            return False
        return list(self.vertices) == generate(self.signature)

    def header(self) -> dict:
        sig = self.signature.as_list() if self.signature else None
        return {
            "signature": sig,
            "threshold_sq": self.threshold_sq,
            "vertices": [str(x) for x in self.vertices],
        }

    def dumps(self) -> str:
        """JSON header line followed by one ``u v`` edge per line."""
        lines = [json.dumps(self.header(), separators=(",", ":"))]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"


def loads_graph(text: str) -> DiameterGraph:
    lines = text.splitlines()
    header = json.loads(lines[0])
    points = [TritVector.parse(s) for s in header["vertices"]]
    adj = [0] * len(points)
    for line in lines[1:]:
        if not line.strip():
            continue
        u, v = map(int, line.split())
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    sig = Signature(*header["signature"]) if header.get("signature") else None
    diam = diameter_sq(points) if len(points) > 1 else 0
    return DiameterGraph(tuple(points), tuple(adj), header["threshold_sq"], diam,
                         tuple(range(len(points))), sig)


def _adjacency(points: Sequence[TritVector], threshold_sq: int) -> list[int]:
    adj = [0] * len(points)
    for i, x in enumerate(points):
        for j in range(i + 1, len(points)):
            if squared_distance(x, points[j]) >= threshold_sq:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def build(points: Sequence[TritVector], threshold_sq: int | None = None) -> DiameterGraph:
    """Graph whose edges are the pairs at squared distance >= threshold_sq.

    With ``threshold_sq=None`` the threshold is the squared diameter of
    ``points``, giving the diameter graph proper.
    """
    points = tuple(points)
    if not points:
        raise ValueError("cannot build a graph on an empty point set")
    diam = diameter_sq(points) if len(points) > 1 else 0
    if threshold_sq is None:
        threshold_sq = diam if diam > 0 else 1
    if threshold_sq <= 0:
        raise ValueError("threshold_sq must be positive")
    sig = points[0].signature
    if any(p.signature != sig for p in points):
        sig = None
    return DiameterGraph(points, tuple(_adjacency(points, threshold_sq)), threshold_sq, diam,
                         tuple(range(len(points))), sig)


def lattice_graph(sig: Signature, threshold_sq: int | None = None) -> DiameterGraph:
    """Diameter graph (or threshold graph) of the whole of L_sig."""
    return build(generate(sig), threshold_sq)


def induced_subgraph(g: DiameterGraph, vertices: Iterable[int]) -> DiameterGraph:
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.order:
            raise IndexError(f"vertex {v} out of range for a graph on {g.order} vertices")
    local = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        mask = 0
        for u in iter_bits(g.adj[v]):
            if u in local:
                mask |= 1 << local[u]
        adj.append(mask)
    origin = tuple(g.origin[v] if g.origin else v for v in keep)
    return DiameterGraph(tuple(g.vertices[v] for v in keep), tuple(adj), g.threshold_sq,
                         g.diameter_sq, origin, g.signature)


def isolated_vertices(g: DiameterGraph) -> frozenset[int]:
    return frozenset(v for v, nb in enumerate(g.adj) if nb == 0)


@dataclass(frozen=True)
class BipartiteView:
    left: frozenset[int]
    right: frozenset[int]
    edges: tuple[tuple[int, int], ...]  # (left, right) pairs

    def left_adjacency(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {u: [] for u in sorted(self.left)}
        for u, v in self.edges:
            out[u].append(v)
        return out


def bipartite_view(g: DiameterGraph, left: Iterable[int], right: Iterable[int]) -> BipartiteView:
    left, right = frozenset(left), frozenset(right)
    if left & right:
        raise ValueError(f"sides overlap in {sorted(left & right)}")
    for side in (left, right):
        mask = bits_of(side)
        for u in sorted(side):
            clash = g.adj[u] & mask
            if clash:
                raise BipartitionError(u, (clash & -clash).bit_length() - 1)
    rmask = bits_of(right)
    edges = tuple((u, v) for u in sorted(left) for v in iter_bits(g.adj[u] & rmask))
    return BipartiteView(left, right, edges)


def two_coloring(adj: Sequence[int], mask: int) -> tuple[int, int] | None:
    """Split ``mask`` into two independent sides, or None if an odd cycle exists."""
    side_a = side_b = 0
    rest = mask
    while rest:
        start = rest & -rest
        a, b = start, 0
        frontier, colour = start, 0
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= mask
            if colour == 0:
                if nxt & a:
                    return None
                nxt &= ~b
                b |= nxt
            else:
                if nxt & b:
                    return None
                nxt &= ~a
                a |= nxt
            frontier, colour = nxt, 1 - colour
        side_a |= a
        side_b |= b
        rest &= ~(a | b)
    return side_a, side_b
