"""Print the table of exact values and recursive lower bounds for all L_mkl with n <= N."""

import argparse

from diamfree.families import bound_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    rows = sorted(bound_table(args.max_n).items(), key=lambda kv: (kv[0].n, kv[0].as_list()))
    print(f"{'(m,k,l)':>10} {'n':>3} {'value':>8}  kind         source")
    for sig, e in rows:
        extra = f"  formula={e.meta['formula']}" if "formula" in e.meta else ""
        print(f"{str(tuple(sig.as_list())):>10} {sig.n:>3} {e.value:>8}  {e.kind:<12} {e.source}{extra}")


if __name__ == "__main__":
    main()
