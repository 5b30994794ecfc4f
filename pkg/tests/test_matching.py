from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from diamfree.diamgraph import BipartiteView, bipartite_view, build, induced_subgraph, lattice_graph
from diamfree.families import matching_case, script_S2
from diamfree.lattice import Signature, generate
from diamfree.solver import koenig_cover, matching_bound, max_matching, propagate_matching
from diamfree.solver.bnb import koenig_independent, maximum_independent_mask
from diamfree.solver.matching import Matching, hopcroft_karp

from oracles import adjacency_from_edges, brute_alpha_masks


def case_graph(label, k, drop_isolated=True):
    """Induced graph on a case's candidates, its left side and the explicit pairing."""
    mc = matching_case(label, k)
    g = lattice_graph(Signature(1, k, 2))
    idx = g.index()
    verts = [idx[x] for x in mc.candidates if not (drop_isolated and x in mc.isolated)]
    sub = induced_subgraph(g, verts)
    local = {x: i for i, x in enumerate(sub.vertices)}
    left = {local[x] for x in mc.left if x in local}
    pairs = Matching(tuple(sorted((local[a], local[b]) for a, b in mc.pairs)))
    return mc, sub, local, left, pairs


@st.composite
def bipartite_graphs(draw):
    a = draw(st.integers(0, 9))
    b = draw(st.integers(0, 9))
    edges = draw(st.lists(st.tuples(st.integers(0, max(a - 1, 0)), st.integers(a, max(a + b - 1, a))),
                          unique=True, max_size=40)) if a and b else []
    return a, b, edges


@settings(max_examples=150, deadline=None)
@given(bipartite_graphs())
def test_hopcroft_karp_matches_networkx(data):
    a, b, edges = data
    left = list(range(a))
    graph = {u: sorted(v for x, v in edges if x == u) for u in left}
    ours = hopcroft_karp(left, graph)
    G = nx.Graph()
    G.add_nodes_from(range(a + b))
    G.add_edges_from(edges)
    theirs = nx.bipartite.maximum_matching(G, top_nodes=left)
    assert len(ours) == len(theirs) // 2
    assert all((u, v) in set(edges) for u, v in ours.items())
    assert len(set(ours.values())) == len(ours)


@settings(max_examples=100, deadline=None)
@given(bipartite_graphs())
def test_koenig_cover_and_bound(data):
    a, b, edges = data
    n = a + b
    view = BipartiteView(frozenset(range(a)), frozenset(range(a, n)), tuple(sorted(edges)))
    m = max_matching(view)
    cover = koenig_cover(view, m)
    assert len(cover) == len(m)
    assert all(u in cover or v in cover for u, v in edges)
    adj = adjacency_from_edges(n, edges)
    best = koenig_independent(adj, (1 << n) - 1)
    assert n - len(m) == brute_alpha_masks(n, adj) == best.bit_count()
    assert not any(adj[v] & best for v in range(n) if best >> v & 1)


def test_empty_view():
    view = BipartiteView(frozenset({0, 1}), frozenset({2}), ())
    assert len(max_matching(view)) == 0
    assert koenig_cover(view, max_matching(view)) == frozenset()


def test_matching_bound_on_perfect_matching():
    g = lattice_graph(Signature(2, 1, 2))  # 30 vertices, x ~ -x only
    idx = g.index()
    left = [v for v, x in enumerate(g.vertices) if x < -x]
    view = bipartite_view(g, left, [idx[-g.vertices[v]] for v in left])
    assert matching_bound(g, view) == 15
    with pytest.raises(ValueError):
        matching_bound(g, bipartite_view(g, left[:3], []))


@pytest.mark.parametrize("k", range(2, 7))
def test_case_i_perfect_on_g_prime(k):
    mc, sub, local, left, pairs = case_graph("i", k)
    view = bipartite_view(sub, left, set(range(sub.order)) - left)
    m = max_matching(view)
    assert pairs.is_valid_in(view) and m.is_valid_in(view)
    assert 2 * len(m) == sub.order == 2 * len(pairs)


def test_case_iii_leaves_two_unmatched_k3():
    mc, sub, local, left, pairs = case_graph("iii", 3)
    view = bipartite_view(sub, left, set(range(sub.order)) - left)
    m = max_matching(view)
    matched_left = {u for u, _ in m.pairs}
    assert len(left - matched_left) == 2
    assert {sub.vertices[u] for u in left - {u for u, _ in pairs.pairs}} == set(mc.unmatched)


def test_case_ii_k3_bound_is_exact():
    mc, sub, local, left, pairs = case_graph("ii", 3, drop_isolated=False)
    view = bipartite_view(sub, left, set(range(sub.order)) - left)
    assert sub.order <= 40
    exact = maximum_independent_mask(sub.adj, sub.all_mask).bit_count()
    assert matching_bound(sub, view) == exact == brute_alpha_masks(sub.order, sub.adj)


def test_s1_u_bound_equals_s1_size():
    mc, sub, local, left, pairs = case_graph("i", 2, drop_isolated=False)
    view = bipartite_view(sub, left, set(range(sub.order)) - left)
    assert matching_bound(sub, view) == len(mc.left) == 6


def test_propagation_forces_all_of_s1():
    mc, sub, local, left, pairs = case_graph("i", 2)
    for x in mc.left:
        if x in local and x[1] == 1:
            p = propagate_matching(sub, pairs, [local[x]])
            assert p.consistent
            assert {sub.vertices[v] for v in p.closure} | set(mc.isolated) == set(mc.left)


def test_propagation_with_empty_matching():
    g = build(generate(Signature(1, 1, 2)))
    p = propagate_matching(g, Matching(()), [0], include_unmatched=False)
    assert p.closure == frozenset({0})


def test_propagation_excludes_script_s2():
    mc, sub, local, left, pairs = case_graph("iii", 3)
    p = propagate_matching(sub, pairs, [local[x] for x in mc.unmatched])
    assert p.consistent
    assert set(script_S2(3)) <= {sub.vertices[v] for v in p.excluded}


def test_propagation_reports_contradiction():
    g = build(generate(Signature(1, 0, 1)))  # a single edge
    p = propagate_matching(g, Matching(()), [0, 1])
    assert not p.consistent and p.contradiction == (0, 1)


@pytest.mark.parametrize("k", range(2, 7))
def test_cases_against_networkx(k):
    for label in ("i", "ii", "iii"):
        if label == "iii" and k < 3:
            continue
        mc, sub, local, left, pairs = case_graph(label, k)
        view = bipartite_view(sub, left, set(range(sub.order)) - left)
        G = nx.Graph()
        G.add_nodes_from(range(sub.order))
        G.add_edges_from(view.edges)
        assert len(max_matching(view)) == len(nx.bipartite.maximum_matching(G, top_nodes=left)) // 2
