"""Command-line entry point: ``gpkd <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Sequence

from gpkd import families, formulas
from gpkd.errors import BudgetExhausted, DomainError, GpkdError
from gpkd.graph import (
    Graph,
    PositionParams,
    build_family,
    build_graph,
    distance_matrix,
    format_edge_list,
    is_connected,
    parse_family,
    read_edge_list,
    to_dot,
)
from gpkd.position import find_violation
from gpkd.solver import SearchOptions, lattice_table, solve_bruteforce, solve_exact

EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

DEFAULT_BRUTE_MAX = 16


class InputError(GpkdError, ValueError):
    pass


def load_graph(args) -> Graph:
    if args.graph and args.graph_file:
        raise InputError("give either --graph or --graph-file, not both")
    if args.graph:
        return build_family(args.graph)
    if args.graph_file:
        return read_edge_list(args.graph_file)
    raise InputError("a graph is required: --graph family:params or --graph-file PATH")


def parse_vertex_set(text: str, g: Graph) -> list[int]:
    """Comma-separated labels; grid families also accept 1-based ``i.j`` pairs."""
    out = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        if "." in token:
            if g.coords is None or g.family_tag is None:
                raise InputError(f"pair {token!r} needs a grid-family graph")
            _, dims = parse_family(g.family_tag)
            cols = dims[1] if len(dims) == 2 else 2
            i, j = (int(x) for x in token.split("."))
            v = (i - 1) * cols + (j - 1)
            if not (1 <= j <= cols and 0 <= v < g.n):
                raise InputError(f"pair {token!r} is outside the grid")
            out.append(v)
        else:
            try:
                out.append(int(token))
            except ValueError:
                raise InputError(f"cannot parse vertex {token!r}") from None
    for v in out:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    return sorted(set(out))


def _options(args) -> SearchOptions:
    return SearchOptions(
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        workers=args.workers,
        warm_start=not getattr(args, "no_warm_start", False),
    )


def _solve(g: Graph, p: PositionParams, method: str, options: SearchOptions):
    if method == "auto":
        method = "brute" if g.n <= DEFAULT_BRUTE_MAX else "exact"
    if method == "brute":
        return solve_bruteforce(g, p, max_vertices=max(g.n, 20))
    return solve_exact(g, p, options)


def _emit(args, text: str, payload: dict, csv_text: str | None = None) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.csv and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        print(text)


# -- subcommands -------------------------------------------------------------


def cmd_compute(args) -> int:
    g = load_graph(args)
    p = PositionParams(args.k, args.d)
    res = _solve(g, p, args.method, _options(args))
    payload = {"graph": g.family_tag or args.graph_file, **res.as_dict()}
    witness = ",".join(map(str, res.witness))
    text = (f"gp^{res.k}_{res.requested_d} = {res.value}\n"
            f"witness: {witness}\n"
            f"requested d = {res.requested_d}, effective d = {res.effective_d}\n"
            f"method: {res.method}, nodes explored: {res.nodes_explored}")
    csv_text = ("value,k,d,effective_d,method,nodes_explored,witness\n"
                f"{res.value},{res.k},{res.requested_d},{res.effective_d},{res.method},"
                f"{res.nodes_explored},{' '.join(map(str, res.witness))}\n")
    _emit(args, text, payload, csv_text)
    return 0


def cmd_check(args) -> int:
    g = load_graph(args)
    p = PositionParams(args.k, args.d)
    s = parse_vertex_set(args.set, g)
    dm = distance_matrix(g)
    violation = find_violation(g, dm, s, p)
    payload = {"valid": violation is None, "set": s, "k": p.k, "d": p.d,
               "effective_d": p.effective_d(dm.diameter)}
    if violation is None:
        text = "valid"
    else:
        w = violation.witness
        payload["violation"] = {"geodesic": list(w.sequence), "length": w.length,
                                "marked": w.count_in_S}
        text = (f"invalid: geodesic {'-'.join(map(str, w.sequence))} of length {w.length} "
                f"carries {w.count_in_S} marked vertices")
    _emit(args, text, payload, f"valid\n{str(violation is None).lower()}\n")
    return 0


def cmd_formula(args) -> int:
    p = PositionParams(args.k, args.d)
    source = "formula"
    try:
        value = formulas.formula_for_family(args.family, args.n, p)
    except DomainError as exc:
        # Cycles outside the closed-form domain are solved exactly instead.
        if args.family != "cycle" or args.n < 3:
            raise
        print(f"note: {exc}; using the exact solver", file=sys.stderr)
        value = solve_exact(build_family(f"cycle:{args.n}"), p).value
        source = "solve_exact"
    payload = {"family": args.family, "n": args.n, "k": p.k, "d": p.d, "value": value, "source": source}
    if args.family == "prism":
        payload["case"] = formulas.prism_case(args.n, p)[1]
    _emit(args, str(value), payload, f"family,n,k,d,value\n{args.family},{args.n},{p.k},{p.d},{value}\n")
    return 0


def cmd_table(args) -> int:
    g = load_graph(args)
    table = lattice_table(g, args.kmax, args.method, _options(args))
    payload = {"graph": table.label, "ks": table.ks, "ds": table.ds, "values": table.values}
    width = max(len(str(v)) for row in table.values for v in row) + 1
    head = "d\\k".ljust(4) + "".join(str(k).rjust(width) for k in table.ks)
    rows = [str(d).ljust(4) + "".join(str(v).rjust(width) for v in row)
            for d, row in zip(table.ds, table.values)]
    _emit(args, "\n".join([head, *rows]), payload, table.to_csv())
    return 0


def _construction(args) -> tuple[list[int], Graph]:
    kind = args.kind
    need = {"j-set": ("n", "m"), "path-block": ("k", "d", "n"), "thin-A": ("k", "d", "n"),
            "thin-B": ("k", "d", "n"), "diamond": ("k",)}[kind]
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing and not (kind == "diamond" and args.radius is not None):
        raise InputError(f"{kind} needs {' '.join(missing)}")
    if kind == "j-set":
        return families.j_set(args.n, args.m, args.r), build_family(f"cycle:{args.n}")
    if kind == "path-block":
        return families.path_block_set(args.k, args.d, args.n), build_family(f"path:{args.n}")
    if kind == "thin-A":
        return families.thin_grid_A(args.k, args.d, args.n), build_family(f"prism:{args.n}")
    if kind == "thin-B":
        return families.thin_grid_B(args.k, args.d, args.n), build_family(f"prism:{args.n}")
    if args.radius is not None:
        if args.center is None or args.rows is None or args.cols is None:
            raise InputError("diamond with --radius also needs --center i,j --rows --cols")
        ci, cj = (int(x) for x in args.center.split(","))
        verts = families.diamond_set(args.radius, (ci, cj), args.rows, args.cols)
        return verts, build_family(f"grid:{args.rows}x{args.cols}")
    r, center, side = families.diamond_for_k(args.k)
    return families.diamond_set(r, center, side, side), build_family(f"grid:{side}x{side}")


def cmd_construct(args) -> int:
    verts, g = _construction(args)
    if args.format == "dot":
        sys.stdout.write(to_dot(g, verts, name=args.kind.replace("-", "_")))
        return 0
    payload = {"kind": args.kind, "graph": g.family_tag, "size": len(verts), "vertices": verts}
    csv_text = families.format_vertex_csv(verts, g.coords)
    if args.format == "csv":
        args.csv = True
    _emit(args, ",".join(map(str, verts)), payload, csv_text)
    return 0


def _grid_points(args):
    for n in range(1, args.n_max + 1):
        for k in range(2, args.k_max + 1):
            for d in range(1, args.d_max + 1):
                yield n, k, d


def cmd_verify(args) -> int:
    options = _options(args)
    mismatches, checked = [], 0
    if args.random:
        rng = random.Random(args.seed)
        for trial in range(args.random):
            g = random_connected_graph(rng, rng.randint(2, args.n_max), rng.uniform(0.2, 0.7))
            for k in range(2, args.k_max + 1):
                for d in range(1, args.d_max + 1):
                    brute = solve_bruteforce(g, (k, d), max_vertices=max(g.n, 20)).value
                    exact = solve_exact(g, (k, d), options).value
                    checked += 1
                    if brute != exact:
                        mismatches.append({"trial": trial, "edges": list(g.edges()), "k": k, "d": d,
                                           "brute": brute, "exact": exact})
    else:
        if args.family is None:
            raise InputError("verify needs --family or --random")
        for n, k, d in _grid_points(args):
            try:
                expected = formulas.formula_for_family(args.family, n, (k, d))
            except GpkdError:
                continue
            g = build_family(f"{args.family}:{n}")
            got = _solve(g, PositionParams(k, d), args.method, options).value
            checked += 1
            if got != expected:
                mismatches.append({"n": n, "k": k, "d": d, "formula": expected, "solver": got})
    payload = {"checked": checked, "mismatches": mismatches, "ok": not mismatches}
    text = f"checked {checked} points, {len(mismatches)} mismatches"
    for m in mismatches:
        text += "\n  mismatch: " + json.dumps(m)
    _emit(args, text, payload)
    return EXIT_MISMATCH if mismatches else 0


def cmd_export(args) -> int:
    g = load_graph(args)
    marked = parse_vertex_set(args.set, g) if args.set else []
    if args.format == "dot":
        sys.stdout.write(to_dot(g, marked))
    elif args.format == "edges":
        sys.stdout.write(format_edge_list(g))
    else:
        sys.stdout.write(families.format_vertex_csv(marked or range(g.n), g.coords))
    return 0


def random_connected_graph(rng: random.Random, n: int, density: float) -> Graph:
    """Random spanning tree plus independent extra edges, so the result is connected."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.add((u, v))
    g = build_graph(n, sorted(edges))
    assert is_connected(g)
    return g


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpkd", description="k-general d-position sets in graphs")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True, search=False):
        out = p.add_mutually_exclusive_group()
        out.add_argument("--json", action="store_true", help="JSON output")
        out.add_argument("--csv", action="store_true", help="CSV output")
        if graph:
            p.add_argument("--graph", help="family spec, e.g. path:14, cycle:16, grid:3x3, prism:7")
            p.add_argument("--graph-file", help="edge-list file ('n m' header, then 'u v' lines)")
        if search:
            p.add_argument("--method", default="auto", choices=("auto", "brute", "exact"))
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--node-budget", type=int)
            p.add_argument("--time-budget", type=float, metavar="SECS")
            p.add_argument("--no-warm-start", action="store_true")

    p = sub.add_parser("compute", help="exact gp^k_d with a witness set")
    common(p, search=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", help="test whether a vertex set is in k-general d-position")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated vertices (or i.j pairs on grids)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("formula", help="closed-form value for paths, cycles and P_n x P_2")
    common(p, graph=False)
    p.add_argument("--family", required=True, choices=("path", "cycle", "prism"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("table", help="gp^k_d for k = 2..kmax and d = 1..diam")
    common(p, search=True)
    p.set_defaults(method="auto")
    for action in p._actions:
        if action.dest == "method":
            action.choices = ("auto", "brute", "exact", "formula")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("construct", help="emit one of the extremal constructions")
    common(p, graph=False)
    p.add_argument("--kind", required=True, choices=("j-set", "path-block", "thin-A", "thin-B", "diamond"))
    for name in ("n", "m", "k", "d", "radius", "rows", "cols"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--r", type=int, default=0, help="rotation of the J-set")
    p.add_argument("--center", help="diamond center as i,j (0-based)")
    p.add_argument("--format", default="list", choices=("list", "csv", "dot"))
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="compare formulas (or two solvers) over a parameter grid")
    common(p, graph=False, search=True)
    p.add_argument("--family", choices=("path", "cycle", "prism"))
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="instead, check solve_exact against brute force on COUNT random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write a graph as DOT, edge list, or CSV vertex list")
    common(p)
    p.add_argument("--set", help="vertices to mark")
    p.add_argument("--format", default="dot", choices=("dot", "edges", "csv"))
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GpkdError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
