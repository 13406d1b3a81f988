"""Acceptance criteria 1-9.  Each test prints one ``criterion N: PASS|FAIL`` line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or ``python3 scripts/run_acceptance.py``.
"""

import csv
import random
import time
from itertools import combinations
from pathlib import Path

import pytest

from gpkd.families import (
    check_k_monotone_geodesic_labeling,
    diamond_for_k,
    diamond_set,
    j_set,
    longest_monotone_subsequence,
    path_block_set,
    thin_grid_A,
    thin_grid_B,
)
from gpkd.formulas import gp_cycle, gp_path, gp_prism, path_identity_rhs
from gpkd.geodesy import geodesic_dag, max_marked_on_geodesic
from gpkd.graph import PositionParams, build_graph, cycle_graph, distance_matrix, grid_graph, is_connected, path_graph, prism_graph
from gpkd.position import check_structure_general_d_position, clockwise_spectrum, is_kgdp, is_maximally_even
from gpkd.solver import SearchOptions, lattice_table, solve_bruteforce, solve_exact
from oracles import max_marked, to_nx
from strategies import random_connected

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def report(capsys):
    """Print the verdict line outside pytest's capture."""

    def emit(number, ok, detail, started):
        with capsys.disabled():
            verdict = "PASS" if ok else "FAIL"
            print(f"\ncriterion {number}: {verdict} - {detail} ({time.monotonic() - started:.1f}s)")
        assert ok, detail

    return emit


def _golden(name):
    with open(GOLDEN / name) as fh:
        rows = list(csv.reader(fh))
    return [[int(v) for v in r[1:]] for r in rows[1:]]


def _compare_table(g, k_max, golden, report, number, seconds):
    t0 = time.monotonic()
    expected = _golden(golden)
    via_formula = lattice_table(g, k_max, method="formula").values
    via_brute = lattice_table(g, k_max, method="brute").values
    elapsed = time.monotonic() - t0
    bad_f = sum(a != b for ra, rb in zip(via_formula, expected) for a, b in zip(ra, rb))
    bad_b = sum(a != b for ra, rb in zip(via_brute, expected) for a, b in zip(ra, rb))
    cells = len(expected) * len(expected[0])
    ok = bad_f == 0 and bad_b == 0 and len(via_brute) == len(expected) and elapsed < seconds
    report(number, ok, f"{cells} cells, formula mismatches {bad_f}, brute mismatches {bad_b}", t0)


def test_criterion_1_path_table(report):
    _compare_table(path_graph(14), 15, "table1_path14.csv", report, 1, 120)


def test_criterion_2_cycle_table(report):
    _compare_table(cycle_graph(14), 9, "table2_cycle14.csv", report, 2, 120)


def test_criterion_3_cycle16(report):
    t0 = time.monotonic()
    g = cycle_graph(16)
    res = solve_bruteforce(g, (3, 5))
    valid = is_kgdp(g, distance_matrix(g), [0, 3, 6, 9, 12], PositionParams(3, 5))
    ok = res.value == 5 and valid and gp_cycle(16, (3, 5)) == 5
    report(3, ok, f"brute {res.value}, witness valid {valid}, formula {gp_cycle(16, (3, 5))}", t0)


def _prism_sweep():
    values = {}
    for n in range(1, 13):
        g = prism_graph(n)
        dm = distance_matrix(g)
        for k in range(2, 7):
            for d in range(1, 9):
                values[n, k, d] = solve_bruteforce(g, (k, d), max_vertices=24, dm=dm).value
    return values


@pytest.fixture(scope="module")
def prism_sweep():
    t0 = time.monotonic()
    return _prism_sweep(), time.monotonic() - t0


def test_criterion_4_thin_grid_sweep(report, prism_sweep):
    t0 = time.monotonic()
    values, elapsed = prism_sweep
    bad = [key for key, v in values.items() if v != gp_prism(key[0], key[1:])]
    report(4, not bad and elapsed < 600, f"{len(values)} points in {elapsed:.1f}s, mismatches {bad[:5]}", t0)


def test_criterion_5_path_identity(report, prism_sweep):
    t0 = time.monotonic()
    values, _ = prism_sweep
    # gp^{k-1} on the right needs k >= 3
    points = [(n, k, d) for (n, k, d) in values if k >= 3 and n >= d + 1 and d >= 2 * k - 3]
    bad = [key for key in points if values[key] != path_identity_rhs(key[0], key[1:])]
    report(5, bool(points) and not bad, f"{len(points)} in-domain points, mismatches {bad[:5]}", t0)


def test_criterion_6_square_grids(report):
    t0 = time.monotonic()
    small = solve_exact(grid_graph(3, 3), (3, 4))
    big = solve_exact(grid_graph(5, 5), (4, 8), SearchOptions(time_budget=600))
    ok = small.value == 4 and big.value == 9
    report(6, ok, f"3x3 k=3 -> {small.value}, 5x5 k=4 -> {big.value} ({big.nodes_explored} nodes)", t0)


def test_criterion_7_maximal_evenness(report):
    t0 = time.monotonic()
    failures = checked = 0
    for n in range(1, 21):
        for m in range(1, n + 1):
            for r in range(n):
                a = j_set(n, m, r)
                checked += 1
                ok = is_maximally_even(n, a)
                for span in range(1, m):
                    spec = clockwise_spectrum(n, a, span)
                    allowed = {(n * span) // m, -(-n * span // m)}
                    ok = ok and sum(spec.values) == span * n and set(spec.support) <= allowed
                failures += not ok
    elapsed = time.monotonic() - t0
    report(7, failures == 0 and elapsed < 60, f"{checked} J-sets, {failures} failures", t0)


def _all_connected_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = build_graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
        if is_connected(g):
            yield g


def _structure_disagreements(g):
    dm = distance_matrix(g)
    bad = 0
    for d in range(2, dm.diameter + 1):
        p = PositionParams(3, d)
        for mask in range(1 << g.n):
            s = [v for v in range(g.n) if mask >> v & 1]
            bad += check_structure_general_d_position(g, dm, s, d) != is_kgdp(g, dm, s, p)
    return bad


def test_criterion_8_structure_equivalence(report):
    t0 = time.monotonic()
    graphs = [g for n in range(1, 6) for g in _all_connected_graphs(n)]
    rng = random.Random(8)
    graphs += [random_connected(rng, rng.randint(2, 8), rng.uniform(0.1, 0.7)) for _ in range(200)]
    bad = sum(_structure_disagreements(g) for g in graphs)
    elapsed = time.monotonic() - t0
    report(8, bad == 0 and elapsed < 600, f"{len(graphs)} graphs, {bad} disagreements", t0)


def _dag_vs_enumeration(rng):
    bad = 0
    for _ in range(150):
        g = random_connected(rng, rng.randint(1, 8), rng.uniform(0.1, 0.6))
        h, dm = to_nx(g), distance_matrix(g)
        s = {v for v in range(g.n) if rng.random() < 0.5}
        for u in range(g.n):
            for v in range(g.n):
                bad += max_marked_on_geodesic(geodesic_dag(g, dm, u, v), s) != max_marked(h, u, v, s)
    return bad


def _lattice_monotone(rng):
    bad = 0
    for _ in range(30):
        g = random_connected(rng, rng.randint(2, 10), rng.uniform(0.1, 0.5))
        t = lattice_table(g, 6, method="exact")
        v = t.values
        bad += sum(v[i][j] > v[i][j + 1] for i in range(len(v)) for j in range(len(v[i]) - 1))
        bad += sum(v[i][j] < v[i + 1][j] for i in range(len(v) - 1) for j in range(len(v[i])))
    return bad


def _constructions():
    bad = 0
    for n in range(3, 21):
        g, dm = cycle_graph(n), distance_matrix(cycle_graph(n))
        for d in range(1, n // 2 + 1):
            for k in range(3, n // 2 + 3):
                bad += not is_kgdp(g, dm, j_set(n, gp_cycle(n, (k, d))), PositionParams(k, d))
    for n in range(1, 41):
        g, dm = path_graph(n), distance_matrix(path_graph(n))
        for k in range(2, 9):
            for d in range(k - 1, 13):
                s = path_block_set(k, d, n)
                bad += len(s) != gp_path(n, (k, d)) or not is_kgdp(g, dm, s, PositionParams(k, d))
    for n in range(1, 25):
        g, dm = prism_graph(n), distance_matrix(prism_graph(n))
        for k in range(2, 7):
            for d in range(1, 12):
                p = PositionParams(k, d)
                if d >= 2 * k - 3:
                    bad += not is_kgdp(g, dm, thin_grid_A(k, d, n), p)
                if k >= 3 and d >= k - 2:
                    bad += not is_kgdp(g, dm, thin_grid_B(k, d, n), p)
    for k in (2, 3, 4, 5):
        r, center, side = diamond_for_k(k)
        s = diamond_set(r, center, side, side)
        bad += len(s) != (k - 1) ** 2 or not is_kgdp(grid_graph(side, side), distance_matrix(grid_graph(side, side)), s, PositionParams(k, 10**6))
    bad += not check_k_monotone_geodesic_labeling(grid_graph(3, 3), 3)
    return bad


def _erdos_szekeres(rng):
    bad = 0
    for n in range(2, 7):
        for _ in range(1000):
            ys = [rng.randint(-50, 50) for _ in range((n - 1) ** 2 + 1)]
            bad += len(longest_monotone_subsequence(enumerate(ys))) < n
    return bad


def test_criterion_9_property_suites(report):
    t0 = time.monotonic()
    rng = random.Random(9)
    counts = {
        "dag-vs-enumeration": _dag_vs_enumeration(rng),
        "lattice-monotone": _lattice_monotone(rng),
        "constructions": _constructions(),
        "erdos-szekeres": _erdos_szekeres(rng),
    }
    detail = ", ".join(f"{k} {v}" for k, v in counts.items())
    report(9, not any(counts.values()), f"failures: {detail}", t0)
