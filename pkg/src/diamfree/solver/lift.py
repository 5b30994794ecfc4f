"""Exact search on whole lattices by lifting classes from one fewer zero.

Every point of L_mkl has k zeros, so for any independent set X the slice
sizes n_i(X, 0) sum to k|X|.  If |X| >= s then some slice holds at least
ceil(k s / n) points, and moving that coordinate to position 1 keeps X
inside the same isomorphism class.  The slice x_1 = 0 is a copy of
L_{m,k-1,l} carrying the same distance threshold, so the sets of size >= s
are recovered, up to coordinate permutations, by taking every class
representative Y of large sets one level down, placing it in the slice and
enumerating the compatible points with x_1 != 0.

Class representatives are canonical images, deduplicated with ``canon``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import ceil
from operator import itemgetter

from ..canon import canonical_form
from ..diamgraph import DiameterGraph, iter_bits, lattice_graph
from ..families import Family
from ..lattice import Signature, TritVector
from .bnb import (DEFAULT_ENUM_LIMIT, DEFAULT_TIME_LIMIT, SearchStats, SolverTimeout, enumerate_independent,
                  maximum_independent_mask)

BASE_VERTICES = 40


@dataclass
class LiftStats:
    nodes: int = 0
    extensions: int = 0
    levels: dict = field(default_factory=dict)


def _extend_task(args):
    adj, cand, need, limit, time_limit = args
    stats = SearchStats()
    masks = enumerate_independent(adj, cand, need, limit=limit, time_limit=time_limit, stats=stats)
    return masks, stats.nodes


class LatticeLifter:
    """Caches per-signature graphs, class lists and independence numbers."""

    def __init__(self, threshold_sq: int, *, time_limit: float | None = DEFAULT_TIME_LIMIT,
                 enum_limit: int = DEFAULT_ENUM_LIMIT, threads: int = 1, base_vertices: int = BASE_VERTICES):
        self.threshold_sq = threshold_sq
        self.enum_limit = enum_limit
        self.threads = max(1, threads)
        self.base_vertices = base_vertices
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.stats = LiftStats()
        self._graphs: dict[Signature, tuple[DiameterGraph, dict]] = {}
        self._reps: dict[tuple[Signature, int], list[Family]] = {}
        self._alpha: dict[Signature, tuple[int, list[Family]]] = {}
        self.lower = 0
        self.upper = None

    # -- helpers ---------------------------------------------------------

    def _remaining(self) -> float | None:
        if self.deadline is None:
            return None
        left = self.deadline - time.monotonic()
        if left <= 0:
            raise SolverTimeout(self.lower, self.upper, self.stats.nodes)
        return left

    def graph(self, sig: Signature) -> tuple[DiameterGraph, dict]:
        if sig not in self._graphs:
            g = lattice_graph(sig, self.threshold_sq)
            self._graphs[sig] = (g, g.index())
        return self._graphs[sig]

    def _family(self, sig: Signature, g: DiameterGraph, mask: int, name: str) -> Family:
        return Family(sig, name, tuple(g.vertices[v] for v in iter_bits(mask)))

    def _dedupe(self, sig: Signature, families: list[Family]) -> list[Family]:
        forms = {}
        for f in families:
            form = canonical_form(f)
            if form not in forms:
                forms[form] = Family(sig, "", tuple(TritVector(r) for r in form.rows))
        reps = sorted(forms.items(), key=lambda kv: (-len(kv[1]), kv[0].key))
        return [f.renamed(f"{sig}#{i}") for i, (_, f) in enumerate(reps)]

    def _is_base(self, sig: Signature) -> bool:
        return sig.k == 0 or sig.cardinality() <= self.base_vertices

    def _candidates(self, sig: Signature, Y: Family) -> tuple[int, int]:
        """(mask of Y lifted into slice x_1 = 0, mask of compatible x_1 != 0 points)."""
        g, index = self.graph(sig)
        ymask = 0
        for y in Y:
            ymask |= 1 << index[TritVector((0,) + y.entries)]
        blocked = 0
        for v in iter_bits(ymask):
            blocked |= g.adj[v]
        cand = 0
        for v, x in enumerate(g.vertices):
            if x.entries[0] != 0 and not blocked >> v & 1:
                cand |= 1 << v
        return ymask, cand

    # -- classification --------------------------------------------------

    def reps_at_least(self, sig: Signature, s: int) -> list[Family]:
        """Class representatives of all independent sets of size >= s in L_sig."""
        key = (sig, s)
        if key in self._reps:
            return self._reps[key]
        g, _ = self.graph(sig)
        if self._is_base(sig):
            stats = SearchStats()
            masks = enumerate_independent(g.adj, g.all_mask, max(s, 0), limit=self.enum_limit,
                                          time_limit=self._remaining(), stats=stats)
            self.stats.nodes += stats.nodes
            found = [self._family(sig, g, m, "") for m in masks]
        else:
            sub = Signature(sig.m, sig.k - 1, sig.l)
            s_sub = ceil(sig.k * s / sig.n)
            sub_reps = self.reps_at_least(sub, s_sub) if s_sub <= self.alpha(sub)[0] else []
            tasks, ymasks = [], []
            for Y in sub_reps:
                ymask, cand = self._candidates(sig, Y)
                need = max(0, s - len(Y))
                tasks.append((g.adj, cand, need, self.enum_limit, self._remaining()))
                ymasks.append(ymask)
            found = []
            for ymask, (masks, nodes) in zip(ymasks, self._run(tasks)):
                self.stats.nodes += nodes
                self.stats.extensions += len(masks)
                found.extend(self._family(sig, g, ymask | m, "") for m in masks)
        reps = self._dedupe(sig, found)
        self.stats.levels[str(key)] = len(reps)
        self._reps[key] = reps
        return reps

    def _run(self, tasks):
        if self.threads == 1 or len(tasks) < 2:
            return [_extend_task(t) for t in tasks]
        with ProcessPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(_extend_task, tasks))

    def alpha(self, sig: Signature) -> tuple[int, list[Family]]:
        """Independence number of L_sig's threshold graph and its class representatives."""
        if sig in self._alpha:
            return self._alpha[sig]
        g, _ = self.graph(sig)
        if self._is_base(sig):
            stats = SearchStats()
            best = maximum_independent_mask(g.adj, g.all_mask, time_limit=self._remaining(), stats=stats)
            self.stats.nodes += stats.nodes
            a = best.bit_count()
            reps = self.reps_at_least(sig, a)
        else:
            sub = Signature(sig.m, sig.k - 1, sig.l)
            a_sub, sub_max = self.alpha(sub)
            self.upper = (sig.n * a_sub) // sig.k
            lower = 0
            for Y in sub_max:
                _, cand = self._candidates(sig, Y)
                stats = SearchStats()
                ext = maximum_independent_mask(g.adj, cand, time_limit=self._remaining(), stats=stats)
                self.stats.nodes += stats.nodes
                lower = max(lower, len(Y) + ext.bit_count())
            self.lower = lower
            reps = self.reps_at_least(sig, lower)
            a = len(reps[0])
        top = [r for r in reps if len(r) == a]
        self._alpha[sig] = (a, top)
        return a, top


def expand_orbits(reps: list[Family], n: int) -> list[Family]:
    """All images of the representatives under S_n, deduplicated and sorted."""
    seen = set()
    for rep in reps:
        rows = [x.entries for x in rep]
        for perm in permutations(range(n)):
            pick = itemgetter(*perm) if n > 1 else (lambda r: r)
            seen.add(tuple(sorted(tuple(pick(r)) for r in rows)))
    sig = reps[0].signature if reps else None
    return [Family(sig, "orbit", tuple(TritVector(r) for r in img)) for img in sorted(seen)]
