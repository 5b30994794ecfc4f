"""Build the 185-point 4-distance set that arises at t = 7 and check it pairwise."""

from fractions import Fraction
from itertools import combinations

from diamfree import johnson


def main():
    pools = johnson.candidate_pools()
    chosen = johnson.pool_ii_prefix(7)
    survivors = [y for y in johnson.compat_graph(chosen)
                 if all(johnson.d2(x, y) in johnson.ALLOWED_SCALED for x in chosen)]
    points = johnson.johnson_scaled() + pools["i"] + pools["iii"] + chosen + survivors
    dists = sorted({Fraction(johnson.d2(a, b), 9) for a, b in combinations(points, 2)})
    print(f"pool(iv) survivors: {len(survivors)}")
    for y in survivors:
        print("  ", " ".join(str(Fraction(e, 3)) for e in y))
    print(f"set size {len(points)} (distinct {len(set(points))}), squared distances {[str(d) for d in dists]}")
    for t in (7, 8, 9):
        info = johnson.large_t_exact(t)
        print(f"t={t}: printed bound {johnson.large_t_bound(t)}, exact bound {info['size_bound']}")


if __name__ == "__main__":
    main()
