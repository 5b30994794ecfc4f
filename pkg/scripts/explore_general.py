"""Compare the general lower-bound formula, the recursive construction and the exact maximum."""

import argparse

from diamfree.diamgraph import lattice_graph
from diamfree.families import frak_M_general, recursive_family
from diamfree.lattice import Signature
from diamfree.solver import SolverTimeout, independence_number


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--time-limit", type=float, default=120)
    args = ap.parse_args()
    print(f"{'(m,k,l)':>10} {'formula':>8} {'construction':>13} {'alpha':>8}")
    for n in range(3, args.max_n + 1):
        for m in range(1, n):
            for l in range(m + 1, n - m + 1):
                k = n - m - l
                if k < l - m:
                    continue
                fam = recursive_family(m, k, l)
                try:
                    alpha = independence_number(lattice_graph(Signature(m, k, l)), time_limit=args.time_limit).alpha
                except SolverTimeout as e:
                    alpha = f"{e.lower}..{e.upper}"
                print(f"{str((m, k, l)):>10} {frak_M_general(m, k, l):>8} {len(fam):>13} {alpha!s:>8}", flush=True)


if __name__ == "__main__":
    main()
