"""Independent brute-force references used only by the tests."""

from itertools import combinations, product


def naive_sq_dist(x, y):
    return sum((a - b) ** 2 for a, b in zip(x, y))


def naive_lattice(m, k, l):
    n = m + k + l
    return sorted(v for v in product((-1, 0, 1), repeat=n)
                  if v.count(-1) == m and v.count(0) == k and v.count(1) == l)


def edge_set(n, adj):
    return {(u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1}


def is_independent(subset, edges):
    return not any((u, v) in edges for u, v in combinations(sorted(subset), 2))


def brute_alpha(n, adj):
    """Scan subsets from the largest size down."""
    edges = edge_set(n, adj)
    for r in range(n, -1, -1):
        for sub in combinations(range(n), r):
            if is_independent(sub, edges):
                return r
    return 0


def brute_alpha_masks(n, adj):
    """Max independent set size by a plain subset-mask sweep (for n <= 25)."""
    best = 0
    good = [True] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        good[mask] = good[rest] and not (adj[low] & rest)
        if good[mask]:
            c = bin(mask).count("1")
            if c > best:
                best = c
    return best


def brute_independent_sets(n, adj, size):
    edges = edge_set(n, adj)
    return sorted(sub for sub in combinations(range(n), size) if is_independent(sub, edges))


def adjacency_from_edges(n, edges):
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj
