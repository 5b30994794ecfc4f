"""Independence number (and optionally the classes) of L(1,6,2); expect 86 and X_6, Y_6, Z_6."""

import argparse
import time

from diamfree import canon
from diamfree.diamgraph import lattice_graph
from diamfree.families import X, Y, Z, frak_M
from diamfree.lattice import Signature
from diamfree.solver import enumerate_maximum, independence_number


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--classify", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--time-limit", type=float, default=3600)
    args = ap.parse_args()

    g = lattice_graph(Signature(1, args.k, 2))
    t0 = time.monotonic()
    res = independence_number(g, time_limit=args.time_limit, threads=args.threads)
    print(f"L(1,{args.k},2): {g.order} points, alpha={res.alpha} (expected {frak_M(args.k)}) "
          f"method={res.method} in {time.monotonic() - t0:.1f}s")
    if args.classify:
        t0 = time.monotonic()
        res = enumerate_maximum(g, time_limit=args.time_limit, threads=args.threads)
        classes = canon.classify(res.enumerated)
        names = {canon.canonical_form(f): f.name for f in (X(args.k), Y(args.k), Z(args.k))}
        print(f"{len(res.enumerated)} maximum sets in {len(classes)} classes ({time.monotonic() - t0:.1f}s)")
        for c in classes:
            print(f"  {names.get(c.form, '?'):>4}  orbit {c.size}  stabilizer {c.form.automorphisms}")


if __name__ == "__main__":
    main()
