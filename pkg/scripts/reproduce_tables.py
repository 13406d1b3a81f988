"""Recompute the P_14 and C_14 lattice tables and diff them against the golden CSVs."""

import argparse
import sys
import time
from pathlib import Path

from gpkd.graph import cycle_graph, path_graph
from gpkd.solver import lattice_table

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--method", default="brute", choices=("brute", "exact", "formula"))
    parser.add_argument("--out", type=Path, help="directory for the computed CSVs")
    args = parser.parse_args()

    ok = True
    for g, k_max, golden in [(path_graph(14), 15, "table1_path14.csv"), (cycle_graph(14), 9, "table2_cycle14.csv")]:
        t0 = time.monotonic()
        text = lattice_table(g, k_max, method=args.method).to_csv()
        same = text == (GOLDEN / golden).read_text()
        ok &= same
        print(f"{g.family_tag}: {'matches' if same else 'DIFFERS from'} {golden} "
              f"[{args.method}, {time.monotonic() - t0:.2f}s]")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / golden).write_text(text)
        if not same:
            print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
