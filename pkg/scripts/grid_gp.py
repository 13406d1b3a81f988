"""gp^k of square grids P_m x P_m (d = diameter) by branch and bound, next to (k-1)^2."""

import argparse
import time

from gpkd.graph import grid_graph
from gpkd.solver import SearchOptions, solve_exact


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6])
    parser.add_argument("--k", type=int, nargs="+", default=[3, 4])
    parser.add_argument("--time-budget", type=float, default=600.0)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    print("m,k,value,(k-1)^2,nodes,seconds")
    for m in args.sizes:
        g = grid_graph(m, m)
        for k in args.k:
            t0 = time.monotonic()
            res = solve_exact(g, (k, 2 * m), SearchOptions(time_budget=args.time_budget, workers=args.workers))
            print(f"{m},{k},{res.value},{(k - 1) ** 2},{res.nodes_explored},{time.monotonic() - t0:.2f}")


if __name__ == "__main__":
    main()
