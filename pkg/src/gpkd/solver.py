"""Exact gp^k_d: exhaustive search, branch and bound, subgraph bounds, lattice tables."""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from gpkd import families, formulas
from gpkd._search import SearchState, through_pairs
from gpkd.errors import BudgetExhausted, DomainError, GraphError, MonotonicityViolation
from gpkd.geodesy import is_isometric_subgraph
from gpkd.graph import DistMatrix, Graph, PositionParams, distance_matrix, induced_subgraph, parse_family
from gpkd.position import is_kgdp

log = logging.getLogger(__name__)

BRUTE_FORCE_CUTOFF = 20
CHUNK_NODES = 250_000


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: tuple[int, ...]
    method: str
    nodes_explored: int
    effective_d: int
    k: int
    requested_d: int

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": list(self.witness),
            "method": self.method,
            "nodes_explored": self.nodes_explored,
            "k": self.k,
            "d": self.requested_d,
            "effective_d": self.effective_d,
        }


@dataclass
class SearchOptions:
    node_budget: int | None = None
    time_budget: float | None = None
    workers: int = 1
    warm_start: bool = True
    # Re-run the full predicate on every visited set (slow; for debugging the kernel).
    full_check: bool = False


def _coerce(p) -> PositionParams:
    return p if isinstance(p, PositionParams) else PositionParams(*p)


def _drive(state: SearchState, shared: np.ndarray, deadline: float | None,
           node_budget: int | None, counter=None) -> bool:
    """Run ``state`` to completion; False if a budget ran out first."""
    while True:
        quota = CHUNK_NODES
        if node_budget is not None:
            used = counter.value if counter is not None else state.nodes
            quota = min(quota, node_budget - used)
            if quota <= 0:
                return False
        before = state.nodes
        status = state.advance(shared, quota)
        if counter is not None:
            with counter.get_lock():
                counter.value += state.nodes - before
        if status == 0:
            return True
        if deadline is not None and time.monotonic() > deadline:
            return False


def _result(g, dm, p, value, witness, method, nodes) -> SolveResult:
    witness = tuple(sorted(witness))
    if len(witness) != value or not is_kgdp(g, dm, witness, p):
        raise AssertionError(f"search produced an invalid witness {witness} for {p}")
    return SolveResult(value, witness, method, nodes, p.effective_d(dm.diameter), p.k, p.d)


def solve_bruteforce(g: Graph, p, max_vertices: int = BRUTE_FORCE_CUTOFF,
                     dm: DistMatrix | None = None) -> SolveResult:
    """Exhaustive walk over the feasible-set tree; only extensions that stay feasible are followed.

    No bound beyond "chosen + still-addable vertices" and no seeded incumbent.
    """
    p = _coerce(p)
    if g.n > max_vertices:
        raise DomainError(f"brute force is limited to {max_vertices} vertices, graph has {g.n}")
    dm = dm or distance_matrix(g)
    d = p.effective_d(dm.diameter)
    state = SearchState(dm.dist, p.k, d, use_cover=False)
    shared = np.zeros(1, dtype=np.int64)
    _drive(state, shared, None, None)
    return _result(g, dm, p, state.best_size, state.witness(), "brute", state.nodes)


def solve_reference(g: Graph, p, dm: DistMatrix | None = None) -> SolveResult:
    """Pure-Python feasible-set walk that re-checks the full predicate at every node."""
    p = _coerce(p)
    dm = dm or distance_matrix(g)
    best: list[int] = []
    nodes = 0

    def extend(chosen: list[int], start: int) -> None:
        nonlocal best, nodes
        if len(chosen) > len(best):
            best = list(chosen)
        for v in range(start, g.n):
            if len(chosen) + (g.n - v) <= len(best):
                return
            chosen.append(v)
            nodes += 1
            if is_kgdp(g, dm, chosen, p):
                extend(chosen, v + 1)
            chosen.pop()

    extend([], 0)
    return _result(g, dm, p, len(best), best, "reference", nodes)


# -- branch and bound ----------------------------------------------------------


def warm_start_set(g: Graph, p: PositionParams, dm: DistMatrix) -> list[int] | None:
    """A known-good construction for tagged families, checked before use."""
    if not g.family_tag:
        return None
    try:
        name, dims = parse_family(g.family_tag)
    except GraphError:
        return None
    k, d = p.k, p.effective_d(dm.diameter)
    candidate: list[int] | None = None
    try:
        if d <= k - 2 or (name == "complete" and k >= 3):
            candidate = list(range(g.n))
        elif name == "path":
            candidate = families.path_block_set(k, d, dims[0])
        elif name == "cycle":
            n = dims[0]
            candidate = families.j_set(n, formulas.gp_cycle(n, (k, d)))
        elif name == "prism" or (name == "grid" and dims[1] == 2):
            n = dims[0]
            options = [families.thin_grid_B(k, d, n)] if k >= 3 and d >= k - 2 else []
            if d >= 2 * k - 3:
                options.append(families.thin_grid_A(k, d, n))
            candidate = max(options, key=len) if options else None
        elif name == "grid" and 2 * k - 3 <= min(dims):
            r, center, _ = families.diamond_for_k(k)
            candidate = families.diamond_set(r, center, *dims)
    except DomainError:
        candidate = None
    if candidate is not None and not is_kgdp(g, dm, candidate, p):
        log.warning("warm start for %s with %s is not valid; ignoring it", g.family_tag, p)
        return None
    return candidate


_WORKER_SHARED = None
_WORKER_COUNTER = None


def _init_worker(shared, counter):
    global _WORKER_SHARED, _WORKER_COUNTER
    _WORKER_SHARED = np.frombuffer(shared, dtype=np.int64)
    _WORKER_COUNTER = counter


def _subtree_task(args):
    dist, k, d, tables, lower, first, deadline, node_budget = args
    state = SearchState(dist, k, d, use_cover=True, lower=lower, first=first, tables=tables)
    finished = _drive(state, _WORKER_SHARED, deadline, node_budget, _WORKER_COUNTER)
    return finished, state.best_size, state.witness(), state.nodes


def solve_exact(g: Graph, p, options: SearchOptions | None = None,
                dm: DistMatrix | None = None) -> SolveResult:
    """Branch and bound with geodesic-chain bounds and an optional construction warm start.

    Raises BudgetExhausted rather than returning an unproven value.
    """
    p = _coerce(p)
    options = options or SearchOptions()
    dm = dm or distance_matrix(g)
    if options.full_check:
        return solve_reference(g, p, dm)
    d = p.effective_d(dm.diameter)
    start = time.monotonic()
    deadline = start + options.time_budget if options.time_budget is not None else None
    warm = warm_start_set(g, p, dm) if options.warm_start else None
    lower = len(warm) if warm else 0

    if options.workers <= 1:
        state = SearchState(dm.dist, p.k, d, use_cover=True, lower=lower)
        shared = np.zeros(1, dtype=np.int64)
        if not _drive(state, shared, deadline, options.node_budget):
            raise BudgetExhausted(
                f"search budget exhausted after {state.nodes} nodes", state.nodes,
                max(state.best_size, lower) or None,
            )
        value, witness, nodes = state.best_size, state.witness(), state.nodes
    else:
        value, witness, nodes = _solve_parallel(dm, p.k, d, lower, deadline, options)

    if warm is not None and value < lower:
        value, witness = lower, warm
    return _result(g, dm, p, value, witness, "branch_and_bound", nodes)


def _solve_parallel(dm, k, d, lower, deadline, options):
    n = dm.n
    dist = np.ascontiguousarray(dm.dist, dtype=np.int32)
    tables = through_pairs(dist, d)
    ctx = mp.get_context("fork")
    shared = ctx.RawArray("q", 1)
    counter = ctx.Value("q", 0)
    tasks = [(dist, k, d, tables, lower, first, deadline, options.node_budget) for first in range(n)]
    with ProcessPoolExecutor(options.workers, mp_context=ctx, initializer=_init_worker,
                             initargs=(shared, counter)) as pool:
        results = list(pool.map(_subtree_task, tasks))
    nodes = sum(r[3] for r in results)
    if not all(r[0] for r in results):
        raise BudgetExhausted(f"search budget exhausted after {nodes} nodes", nodes, None)
    best = max(r[1] for r in results)
    witness = min((r[2] for r in results if r[1] == best), default=[])
    return best, witness, nodes


# -- bounds from subgraphs -----------------------------------------------------


def induced_value(g: Graph, part: Sequence[int], p, method: str = "exact") -> int:
    """gp^k_d of the subgraph induced by ``part`` (as a graph in its own right)."""
    sub, _ = induced_subgraph(g, part)
    solve = solve_bruteforce if method == "brute" else solve_exact
    return solve(sub, p).value


def _check_parts(g: Graph, parts, part_values, dm):
    if len(parts) != len(part_values):
        raise DomainError("need exactly one value per part")
    for part in parts:
        if not part:
            raise DomainError("parts must be nonempty")
        if not is_isometric_subgraph(g, part, dm):
            raise DomainError(f"part {sorted(part)} does not induce an isometric subgraph")


def upper_bound_isometric_cover(g: Graph, cover, p, part_values, dm: DistMatrix | None = None) -> int:
    """Sum of part values for isometric parts covering every vertex."""
    _coerce(p)
    dm = dm or distance_matrix(g)
    _check_parts(g, cover, part_values, dm)
    covered = set().union(*map(set, cover)) if cover else set()
    if covered != set(range(g.n)):
        raise DomainError(f"cover misses vertices {sorted(set(range(g.n)) - covered)}")
    return int(sum(part_values))


def lower_bound_disjoint_parts(g: Graph, parts, p, part_values, dm: DistMatrix | None = None) -> int:
    """Sum of part values for disjoint isometric parts pairwise at distance >= d."""
    p = _coerce(p)
    dm = dm or distance_matrix(g)
    _check_parts(g, parts, part_values, dm)
    d = p.effective_d(dm.diameter)
    sets = [set(x) for x in parts]
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if a & b:
                raise DomainError(f"parts overlap in {sorted(a & b)}")
            gaps = [int(dm.dist[x, y]) for x in a for y in b if dm.dist[x, y] >= 0]
            if gaps and min(gaps) < d:
                raise DomainError(f"parts {sorted(a)} and {sorted(b)} are closer than d={d}")
    return int(sum(part_values))


# -- lattice tables --------------------------------------------------------------


@dataclass
class LatticeTable:
    """gp^k_d values, rows indexed by d = 1..diameter and columns by k = 2..k_max."""

    label: str
    ks: list[int]
    ds: list[int]
    values: list[list[int]] = field(default_factory=list)

    def __getitem__(self, kd: tuple[int, int]) -> int:
        k, d = kd
        return self.values[self.ds.index(d)][self.ks.index(k)]

    def to_csv(self) -> str:
        lines = ["d," + ",".join(str(k) for k in self.ks)]
        for d, row in zip(self.ds, self.values):
            lines.append(f"{d}," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"

    def check_monotone(self) -> None:
        for i, d in enumerate(self.ds):
            for j, k in enumerate(self.ks):
                v = self.values[i][j]
                if j + 1 < len(self.ks) and self.values[i][j + 1] < v:
                    raise MonotonicityViolation(f"value drops from k={k} to k={k + 1} at d={d}")
                if i + 1 < len(self.ds) and self.values[i + 1][j] > v:
                    raise MonotonicityViolation(f"value grows from d={d} to d={d + 1} at k={k}")


def _formula_solver(g: Graph) -> Callable[[int, int], int]:
    name, dims = parse_family(g.family_tag or "")
    if name == "grid" and dims[1] == 2:
        name = "prism"
    if name not in ("path", "cycle", "prism"):
        raise DomainError(f"no closed form for {g.family_tag}")
    return lambda k, d: formulas.formula_for_family(name, dims[0], (k, d))


def lattice_table(g: Graph, k_max: int, method: str = "auto",
                  options: SearchOptions | None = None) -> LatticeTable:
    """Table of gp^k_d for k in 2..k_max and d in 1..diam, checked for monotonicity."""
    if k_max < 2:
        raise DomainError("k_max must be at least 2")
    dm = distance_matrix(g)
    if method == "auto":
        method = "brute" if g.n <= 16 else "exact"
    if method == "formula":
        value = _formula_solver(g)
    elif method == "brute":
        value = lambda k, d: solve_bruteforce(g, (k, d), max_vertices=max(g.n, BRUTE_FORCE_CUTOFF), dm=dm).value
    elif method == "exact":
        value = lambda k, d: solve_exact(g, (k, d), options, dm=dm).value
    else:
        raise DomainError(f"unknown method {method!r}")
    ks = list(range(2, k_max + 1))
    ds = list(range(1, max(dm.diameter, 1) + 1))
    table = LatticeTable(g.family_tag or f"graph(n={g.n})", ks, ds,
                         [[value(k, d) for k in ks] for d in ds])
    table.check_monotone()
    return table
