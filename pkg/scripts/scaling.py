"""Solve times of random delegation graphs with three edges per node.

Usage: python3 scripts/scaling.py [--sizes 25 50 100 200] [--repeats 3]
"""
from __future__ import annotations

import argparse
import math
import random
import statistics
import time

from mixedborda.generators import random_delegation_graph
from mixedborda.mbb_solver import solve_detailed


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100, 200])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--sink-fraction", type=float, default=0.05)
    args = p.parse_args()

    print(f"{'n':>5} {'edges':>6} {'median s':>9} {'nested':>7} {'digits':>7}")
    prev = None
    for n in args.sizes:
        times, nested, digits = [], 0, 0
        for seed in range(args.repeats):
            g = random_delegation_graph(
                random.Random(seed), n, costs=(1, 1, 2), n_edges=3 * n,
                sink_fraction=args.sink_fraction, sink_cost_bonus=1,
            )
            start = time.perf_counter()
            r = solve_detailed(g)
            times.append(time.perf_counter() - start)
            nested = max(nested, len(r.cert.nonsingletons))
            digits = max(digits, len(str(r.num_min_branchings)))
        t = statistics.median(times)
        growth = f"  x{t / prev[1]:.1f} (exponent {math.log(t / prev[1]) / math.log(n / prev[0]):.2f})" if prev else ""
        print(f"{n:>5} {3 * n:>6} {t:>9.3f} {nested:>7} {digits:>7}{growth}")
        prev = (n, t)


if __name__ == "__main__":
    main()
