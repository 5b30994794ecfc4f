"""Maximum independent sets of diameter graphs: alpha, witnesses, enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diamgraph import DiameterGraph, iter_bits, two_coloring
from ..families import Family
from .bnb import (DEFAULT_ENUM_LIMIT, DEFAULT_TIME_LIMIT, DEFAULT_VERTEX_LIMIT, EnumerationLimitError,
                  SearchStats, SolverTimeout, enumerate_independent, greedy_independent, hoffman_bound,
                  koenig_independent, maximum_independent_mask, upper_bound)
from .lift import LatticeLifter, expand_orbits
from .matching import Matching, Propagation, koenig_cover, matching_bound, max_matching, propagate_matching

__all__ = [
    "MISResult", "Matching", "Propagation", "SolverTimeout", "EnumerationLimitError",
    "independence_number", "enumerate_maximum", "enumerate_size", "enumerate_at_least",
    "classify_lattice", "max_matching", "matching_bound", "propagate_matching", "koenig_cover",
    "LatticeLifter",
]

LIFT_MIN_VERTICES = 64


@dataclass
class MISResult:
    alpha: int
    witness: Family
    enumerated: list[Family] | None = None
    node_count: int = 0
    threshold_sq: int = 0
    method: str = "bnb"
    classes: list[Family] | None = field(default=None, repr=False)

    def to_dict(self, include_families: bool = False) -> dict:
        sig = self.witness.signature
        out = {
            "signature": sig.as_list() if sig else None,
            "threshold_sq": self.threshold_sq,
            "alpha": self.alpha,
            "witness": [str(x) for x in self.witness],
            "enumerated_count": None if self.enumerated is None else len(self.enumerated),
        }
        if include_families and self.enumerated is not None:
            out["families"] = [[str(x) for x in f] for f in self.enumerated]
        return out


def _family(g: DiameterGraph, mask: int, name: str) -> Family:
    return Family(g.signature, name, tuple(g.vertices[v] for v in iter_bits(mask)))


def _choose_method(g: DiameterGraph, method: str) -> str:
    if method not in ("auto", "bnb", "lift"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        big = g.order > LIFT_MIN_VERTICES and g.is_full_lattice()
        # bipartite graphs are settled at the root by the Koenig bound, and a
        # greedy set meeting the spectral bound needs no search at all
        settled = two_coloring(g.adj, g.all_mask) is not None
        if big and not settled:
            cap = hoffman_bound(g.adj, g.all_mask)
            settled = cap is not None and greedy_independent(g.adj, g.all_mask).bit_count() >= cap
        method = "lift" if big and not settled else "bnb"
    if method == "lift" and not g.is_full_lattice():
        raise ValueError("the lifting search needs the vertex set to be a whole lattice")
    return method


def _check_size(g: DiameterGraph, vertex_limit: int):
    if g.order > vertex_limit:
        raise ValueError(f"graph has {g.order} vertices, above the limit {vertex_limit}")


def _witness_from_rep(g: DiameterGraph, rep: Family) -> Family:
    index = g.index()
    return _family(g, sum(1 << index[x] for x in rep), "witness")


def independence_number(g: DiameterGraph, *, method: str = "auto", time_limit: float | None = DEFAULT_TIME_LIMIT,
                        vertex_limit: int = DEFAULT_VERTEX_LIMIT, threads: int = 1) -> MISResult:
    """Exact independence number with one maximum independent set.

    ``method="bnb"`` runs the generic branch and bound, capped at the
    spectral bound on regular graphs; ``"lift"`` the
    symmetry-reduced lattice search; ``"auto"`` picks lifting for whole,
    non-bipartite lattices above 64 points.  The value never depends on ``threads``.
    """
    _check_size(g, vertex_limit)
    chosen = _choose_method(g, method)
    if chosen == "lift":
        lifter = LatticeLifter(g.threshold_sq, time_limit=time_limit, threads=threads)
        try:
            alpha, reps = lifter.alpha(g.signature)
        except EnumerationLimitError:
            # too many large sets below to lift; auto mode falls back to plain search
            if method != "auto":
                raise
        else:
            return MISResult(alpha, _witness_from_rep(g, reps[0]), None, lifter.stats.nodes, g.threshold_sq,
                             "lift", reps)
    stats = SearchStats()
    cap = hoffman_bound(g.adj, g.all_mask) if g.order else None
    best = maximum_independent_mask(g.adj, g.all_mask, time_limit=time_limit, stats=stats, cap=cap)
    return MISResult(best.bit_count(), _family(g, best, "witness"), None, stats.nodes, g.threshold_sq, "bnb")


def enumerate_size(g: DiameterGraph, s: int, *, enum_limit: int = DEFAULT_ENUM_LIMIT,
                   time_limit: float | None = DEFAULT_TIME_LIMIT) -> list[Family]:
    """All independent sets of exactly ``s`` vertices, in vertex-index order."""
    masks = enumerate_independent(g.adj, g.all_mask, s, max_size=s, limit=enum_limit, time_limit=time_limit)
    return [_family(g, m, f"I{i}") for i, m in enumerate(masks)]


def enumerate_at_least(g: DiameterGraph, s: int, *, enum_limit: int = DEFAULT_ENUM_LIMIT,
                       time_limit: float | None = DEFAULT_TIME_LIMIT) -> list[Family]:
    masks = enumerate_independent(g.adj, g.all_mask, s, limit=enum_limit, time_limit=time_limit)
    return [_family(g, m, f"I{i}") for i, m in enumerate(masks)]


def enumerate_maximum(g: DiameterGraph, *, method: str = "auto", enum_limit: int = DEFAULT_ENUM_LIMIT,
                      time_limit: float | None = DEFAULT_TIME_LIMIT, vertex_limit: int = DEFAULT_VERTEX_LIMIT,
                      threads: int = 1) -> MISResult:
    """All maximum independent sets, sorted by member lists."""
    first = independence_number(g, method=method, time_limit=time_limit, vertex_limit=vertex_limit,
                                threads=threads)
    if first.method == "lift":
        sets = expand_orbits(first.classes, g.signature.n)
        if len(sets) > enum_limit:
            raise EnumerationLimitError(f"{len(sets)} maximum sets exceed the limit {enum_limit}")
        sets = [f.renamed(f"I{i}") for i, f in enumerate(sets)]
    else:
        sets = enumerate_size(g, first.alpha, enum_limit=enum_limit, time_limit=time_limit)
        sets.sort(key=lambda f: f.members)
    first.enumerated = sets
    return first


def classify_lattice(g: DiameterGraph, min_size: int | None = None, *, time_limit: float | None = DEFAULT_TIME_LIMIT,
                     enum_limit: int = DEFAULT_ENUM_LIMIT, threads: int = 1) -> list[Family]:
    """Class representatives of independent sets of size >= min_size (default alpha)."""
    if not g.is_full_lattice():
        raise ValueError("classification by lifting needs a whole lattice")
    lifter = LatticeLifter(g.threshold_sq, time_limit=time_limit, enum_limit=enum_limit, threads=threads)
    if min_size is None:
        return lifter.alpha(g.signature)[1]
    return lifter.reps_at_least(g.signature, min_size)
