"""Check suites behind ``diamfree verify``: each check records expected vs observed."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Callable

from . import canon, johnson
from .diamgraph import lattice_graph
from .families import (M_exact, V2, W2, X, Y, Z, bound_table, frak_M, frak_M_general, recursive_family)
from .lattice import Signature, squared_distance, zero_column_counts
from .solver import (SolverTimeout, classify_lattice, enumerate_maximum, enumerate_size, independence_number)
from .solver.bnb import DEFAULT_TIME_LIMIT

SUITES = ("main-theorem", "props", "johnson", "section4")
SLOW_K = 6


@dataclass
class Check:
    name: str
    expected: Any
    observed: Any
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "observed": self.observed, "passed": self.passed}


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected, observed, passed: bool | None = None) -> Check:
        ok = (expected == observed) if passed is None else passed
        check = Check(name, expected, observed, bool(ok))
        self.checks.append(check)
        return check

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_dict() for c in self.checks],
                "skipped": self.skipped}


def _forms(fams) -> list[str]:
    return sorted({canon.canonical_form(f).bytes.hex() for f in fams})


def l1k2(k: int):
    return lattice_graph(Signature(1, k, 2), None)


# --- main theorem ---------------------------------------------------------

def extremal_families(k: int) -> list:
    """X_k, Y_k, Z_k (Z_k only from k = 2 on)."""
    return [X(k), Y(k)] + ([Z(k)] if k >= 2 else [])


def main_theorem(ks=range(1, 6), *, slow: bool = False, time_limit: float | None = DEFAULT_TIME_LIMIT,
                 threads: int = 1) -> SuiteReport:
    rep = SuiteReport("main-theorem")
    for k in ks:
        if k >= SLOW_K and not slow:
            rep.skipped.append(f"k={k} (needs --slow)")
            continue
        g = l1k2(k)
        res = independence_number(g, time_limit=time_limit, threads=threads)
        rep.add(f"alpha L(1,{k},2)", frak_M(k), res.alpha)
        fams = extremal_families(k)
        for f in fams:
            rep.add(f"{f.name} independent of size M_{k}", [frak_M(k), True],
                    [len(f), g.is_independent(g.index()[x] for x in f)])
        reps = classify_lattice(g, time_limit=time_limit, threads=threads)
        expected = _forms(fams)
        rep.add(f"maximum classes of L(1,{k},2) are " + ", ".join(f.name for f in fams), [len(expected), True],
                [len(reps), _forms(reps) == expected])
    return rep


# --- propositions ---------------------------------------------------------

def eleven_point_classes(time_limit: float | None = DEFAULT_TIME_LIMIT):
    """Classes of 11-point independent sets of L(1,2,2) and the allowed shapes."""
    g = l1k2(2)
    found = canon.classify(enumerate_size(g, 11, time_limit=time_limit))
    allowed = {canon.canonical_form(V2()), canon.canonical_form(W2())}
    for f in (X(2), Y(2), Z(2)):
        for x in f:
            allowed.add(canon.canonical_form(f.minus([x], "del")))
    return found, allowed


def closed_form_sigs(max_n: int = 6) -> list[Signature]:
    return [s for s, e in sorted(bound_table(max_n).items(), key=lambda kv: kv[0].as_list())
            if e.kind == "exact" and e.source != "one-zero-two"]


def props(*, max_n: int = 6, time_limit: float | None = DEFAULT_TIME_LIMIT, threads: int = 1) -> SuiteReport:
    rep = SuiteReport("props")
    for k, value in ((1, 6), (2, 12), (3, 22)):
        rep.add(f"alpha L(1,{k},2)", value, independence_number(l1k2(k), time_limit=time_limit).alpha)
    res = enumerate_maximum(l1k2(1), method="bnb", time_limit=time_limit)
    rep.add("L(1,1,2) maximum sets", [8, 2], [len(res.enumerated), len(canon.classify(res.enumerated))])
    found, allowed = eleven_point_classes(time_limit)
    rep.add("11-point sets of L(1,2,2) are V_2, W_2 or deletions", True,
            all(c.form in allowed for c in found), None)
    rep.checks[-1].observed = {"classes": len(found), "all_allowed": rep.checks[-1].passed}
    for sig in closed_form_sigs(max_n):
        entry = M_exact(sig)
        g = lattice_graph(sig, None)
        rep.add(f"alpha {sig} ({entry.source})", entry.value,
                independence_number(g, time_limit=time_limit, threads=threads).alpha)
    return rep


# --- section 3 ------------------------------------------------------------

def johnson_suite() -> SuiteReport:
    rep = SuiteReport("johnson")
    pools = johnson.candidate_pools()
    rep.add("pool sizes", {"i": 36, "ii": 9, "iii": 9, "iv": 252}, {k: len(v) for k, v in pools.items()})
    J = johnson.johnson_scaled()
    rep.add("pool to J~(9,4) distances", sorted(johnson.ALLOWED_SCALED),
            sorted({johnson.d2(x, y) for v in pools.values() for x in v for y in J}))
    iso = johnson.pool_iv_isometry()
    bad = sum(1 for a, b in combinations(pools["iv"], 2)
              if johnson.d2(a, b) != 9 * squared_distance(iso[a], iso[b]))
    rep.add("pool(iv) isometry preserves all pairs", [comb(252, 2), 0], [comb(252, 2), bad])
    rep.add("image of X^(iv)' is X_6", True,
            sorted(iso[y] for y in johnson.pool_iv_prime()) == list(X(6).members))
    for t in range(1, 7):
        rep.add(f"t_bound({t}) equals the cubic", int(johnson.t_cubic(t)), johnson.t_bound(t))
    best = max(range(1, 7), key=johnson.t_bound)
    rep.add("t_bound maximum 258 only at t=1", [258, [1]],
            [johnson.t_bound(best), [t for t in range(1, 7) if johnson.t_bound(t) == 258]])
    for t in (7, 8, 9):
        info = johnson.large_t_exact(t)
        rep.add(f"t={t} size bound <= 181", "<= 181", info["size_bound"], info["size_bound"] <= 181)
    for variant in "XYZ":
        r = johnson.verify_258(variant)
        rep.add(f"258-point set ({variant})", [258, [2, 4, 6, 8], True, 0],
                [r.size, r.distance_set, r.maximal, len(r.violations)])
    parts = [johnson.lattice_part(v) for v in "XYZ"]
    rep.add("three extremal sets pairwise non-isomorphic", 3, len(_forms(parts)))
    return rep


# --- section 4 ------------------------------------------------------------

def averaging_holds(fams, k: int) -> tuple[int, bool]:
    """Lemma check on sets of size >= M_k: some zero slice holds >= M_{k-1} points."""
    worst = None
    for f in fams:
        top = max(zero_column_counts(f)[0])
        worst = top if worst is None else min(worst, top)
    return worst, worst is not None and worst >= frak_M(k - 1)


def section4(*, time_limit: float | None = DEFAULT_TIME_LIMIT) -> SuiteReport:
    rep = SuiteReport("section4")
    for k in range(1, 7):
        rep.add(f"general formula at (1,{k},2) equals M_{k}", frak_M(k), frak_M_general(1, k, 2))
    rep.add("formula at (1,3,3)", 38, frak_M_general(1, 3, 3))
    for sig in ((1, 3, 3), (1, 2, 3), (1, 4, 3), (2, 1, 3), (1, 4, 2)):
        F = recursive_family(*sig)
        L = Signature(*sig)
        g = lattice_graph(L, None)
        rep.add(f"recursive family {L} avoids the diameter", True, F.max_squared_distance() < g.diameter_sq)
        rep.add(f"recursive family {L} size >= formula", f">= {frak_M_general(*sig)}", len(F),
                len(F) >= frak_M_general(*sig))
    for k in (4, 5):
        res = enumerate_maximum(l1k2(k), time_limit=time_limit)
        worst, ok = averaging_holds(res.enumerated, k)
        rep.add(f"averaging on {len(res.enumerated)} maximum sets of L(1,{k},2)", f">= {frak_M(k - 1)}", worst, ok)
    return rep


def run_suite(name: str, *, ks=range(1, 6), slow: bool = False, time_limit: float | None = DEFAULT_TIME_LIMIT,
              threads: int = 1) -> SuiteReport:
    runners: dict[str, Callable[[], SuiteReport]] = {
        "main-theorem": lambda: main_theorem(ks, slow=slow, time_limit=time_limit, threads=threads),
        "props": lambda: props(time_limit=time_limit, threads=threads),
        "johnson": johnson_suite,
        "section4": lambda: section4(time_limit=time_limit),
    }
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return runners[name]()


__all__ = ["Check", "SuiteReport", "SUITES", "run_suite", "main_theorem", "props", "johnson_suite", "section4",
           "averaging_holds", "eleven_point_classes", "closed_form_sigs", "SolverTimeout"]
