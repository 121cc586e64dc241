"""Time transform and visibility-graph construction on growing staircases.

    python scripts/bench_visibility.py [--sizes 10 50 100 200] [--exact]
"""
import argparse
import time

from seglink.corpus import staircase
from seglink.gadgets import transform_circuit
from seglink.visibility import visibility_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 50, 100, 200])
    ap.add_argument("--exact", action="store_true", help="also time the pure-Python exact backend")
    args = ap.parse_args()
    visibility_graph(staircase(2))  # compile the kernel outside the timings
    print(f"{'k':>5} {'segs':>6} {'edges':>7} {'transform':>10} {'kernel':>8}" + (f" {'exact':>8}" if args.exact else ""))
    for k in args.sizes:
        t0 = time.perf_counter()
        out, _ = transform_circuit(staircase(k))
        t1 = time.perf_counter()
        g = visibility_graph(out)
        t2 = time.perf_counter()
        row = f"{k:>5} {len(out):>6} {len(g.edges):>7} {t1 - t0:>9.3f}s {t2 - t1:>7.3f}s"
        if args.exact:
            t3 = time.perf_counter()
            visibility_graph(out, "exact")
            row += f" {time.perf_counter() - t3:>7.3f}s"
        print(row)


if __name__ == "__main__":
    main()
