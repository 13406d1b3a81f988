"""Shortest-path DAGs, marked-vertex maximisation along geodesics, and subgraph relations.

The set of all u-v geodesics is never materialised.  It is represented by the
DAG of vertices ``x`` with ``d(u, x) + d(x, v) = d(u, v)``; any source-to-sink
path in that DAG is a geodesic and vice versa.  Explicit enumeration exists
only as a test oracle and refuses to run past ``limit`` paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from gpkd.errors import GeodesicLimitExceeded, GraphError, UnreachablePairError
from gpkd.graph import DistMatrix, Graph, distance_matrix, induced_subgraph

DEFAULT_GEODESIC_LIMIT = 10**6


@dataclass(frozen=True)
class GeodesicDag:
    source: int
    sink: int
    layer: dict[int, int]
    dag_edges: tuple[tuple[int, int], ...]
    order: tuple[int, ...]
    preds: dict[int, tuple[int, ...]]
    succs: dict[int, tuple[int, ...]]

    @property
    def length(self) -> int:
        return self.layer[self.sink]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.layer)


@dataclass(frozen=True)
class GeodesicWitness:
    endpoints: tuple[int, int]
    sequence: tuple[int, ...]
    length: int
    count_in_S: int


def interval(dm: DistMatrix, u: int, v: int) -> list[int]:
    """Vertices lying on at least one u-v geodesic, ascending."""
    duv = dm.dist[u, v]
    if duv < 0:
        raise UnreachablePairError(f"vertices {u} and {v} are in different components")
    du, dv = dm.dist[u], dm.dist[v]
    return [x for x in range(dm.n) if du[x] >= 0 and du[x] + dv[x] == duv]


def geodesic_dag(g: Graph, dm: DistMatrix, u: int, v: int) -> GeodesicDag:
    key = ("dag", u, v)
    cached = dm._cache.get(key)
    if cached is not None:
        return cached
    members = interval(dm, u, v)
    du = dm.dist[u]
    layer = {x: int(du[x]) for x in members}
    edges = []
    preds: dict[int, list[int]] = {x: [] for x in members}
    succs: dict[int, list[int]] = {x: [] for x in members}
    for x in members:
        for y in g.adjacency[x]:
            if y in layer and layer[y] == layer[x] + 1:
                edges.append((x, y))
                preds[y].append(x)
                succs[x].append(y)
    order = tuple(sorted(members, key=lambda x: (layer[x], x)))
    dag = GeodesicDag(
        u, v, layer, tuple(edges), order,
        {x: tuple(p) for x, p in preds.items()},
        {x: tuple(s) for x, s in succs.items()},
    )
    dm._cache[key] = dag
    return dag


def _marked_dp(dag: GeodesicDag, marked) -> dict[int, int]:
    best: dict[int, int] = {}
    for x in dag.order:
        incoming = dag.preds[x]
        base = max(best[p] for p in incoming) if incoming else 0
        best[x] = base + (1 if x in marked else 0)
    return best


def max_marked_on_geodesic(dag: GeodesicDag, s: Iterable[int]) -> int:
    """Max of ``|S & V(g)|`` over all geodesics g between the DAG's endpoints."""
    marked = s if isinstance(s, (set, frozenset)) else set(s)
    if not marked:
        return 0
    return _marked_dp(dag, marked)[dag.sink]


def best_marked_geodesic(dag: GeodesicDag, s: Iterable[int]) -> GeodesicWitness:
    """A geodesic attaining ``max_marked_on_geodesic``, rebuilt by backtracking."""
    marked = s if isinstance(s, (set, frozenset)) else set(s)
    best = _marked_dp(dag, marked)
    path = [dag.sink]
    while path[-1] != dag.source:
        x = path[-1]
        path.append(max(dag.preds[x], key=lambda p: (best[p], -p)))
    path.reverse()
    return GeodesicWitness((dag.source, dag.sink), tuple(path), len(path) - 1, best[dag.sink])


def enumerate_geodesics(
    g: Graph,
    dm: DistMatrix,
    u: int,
    v: int,
    limit: int = DEFAULT_GEODESIC_LIMIT,
    s: Iterable[int] = (),
) -> list[GeodesicWitness]:
    """Every u-v geodesic, in DFS order over the DAG. Oracle use only."""
    dag = geodesic_dag(g, dm, u, v)
    marked = set(s)
    found: list[GeodesicWitness] = []
    stack = [(u, (u,))]
    while stack:
        x, seq = stack.pop()
        if x == v:
            if len(found) >= limit:
                raise GeodesicLimitExceeded(f"more than {limit} geodesics between {u} and {v}")
            count = sum(1 for y in seq if y in marked)
            found.append(GeodesicWitness((u, v), seq, len(seq) - 1, count))
            continue
        for y in reversed(dag.succs[x]):
            stack.append((y, seq + (y,)))
    return found


def on_common_geodesic(dm: DistMatrix, vertices: Sequence[int]) -> bool:
    """True iff some single geodesic passes through all of ``vertices``."""
    pts = list(dict.fromkeys(vertices))
    if len(pts) <= 1:
        return True
    dist = dm.dist
    span = -1
    ends = []
    for a, b in combinations(pts, 2):
        dab = dist[a, b]
        if dab < 0:
            return False
        if dab > span:
            span, ends = dab, [(a, b)]
        elif dab == span:
            ends.append((a, b))
    # Along a geodesic the extreme vertices realise the largest pairwise distance,
    # and the others are ordered by distance from one extreme.
    for a, b in ends:
        chain = sorted(pts, key=lambda x: dist[a, x])
        if all(dist[a, x] + dist[x, b] == span for x in pts) and all(
            dist[a, x] + dist[x, y] == dist[a, y] for x, y in zip(chain, chain[1:])
        ):
            return True
    return False


def is_isometric_subgraph(g: Graph, x: Iterable[int], dm: DistMatrix | None = None) -> bool:
    x = sorted(set(x))
    _check_subset(g, x)
    dm = dm or distance_matrix(g)
    sub, labels = induced_subgraph(g, x)
    sub_dm = distance_matrix(sub)
    for i, a in enumerate(labels):
        for j in range(i + 1, len(labels)):
            if sub_dm.dist[i, j] != dm.dist[a, labels[j]]:
                return False
    return True


def is_convex_subgraph(g: Graph, x: Iterable[int], dm: DistMatrix | None = None) -> bool:
    members = set(x)
    _check_subset(g, members)
    dm = dm or distance_matrix(g)
    ordered = sorted(members)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if not dm.reachable(a, b):
                continue
            if any(w not in members for w in interval(dm, a, b)):
                return False
    return True


def set_distance(dm: DistMatrix, x1: Iterable[int], x2: Iterable[int]) -> int:
    """``min d(a, b)`` over the two sets; ignores unreachable pairs."""
    values = [dm.dist[a, b] for a in x1 for b in x2 if dm.dist[a, b] >= 0]
    if not values:
        raise UnreachablePairError("the two vertex sets lie in different components")
    return int(min(values))


def are_parallel(g: Graph, x1: Iterable[int], x2: Iterable[int], dm: DistMatrix | None = None) -> bool:
    x1, x2 = set(x1), set(x2)
    if not x1 or not x2:
        raise GraphError("parallel check needs two nonempty vertex sets")
    if x1 & x2:
        raise GraphError(f"vertex sets overlap in {sorted(x1 & x2)}")
    _check_subset(g, x1 | x2)
    dm = dm or distance_matrix(g)
    values = {int(dm.dist[a, b]) for a in x1 for b in x2}
    return len(values) == 1


def _check_subset(g: Graph, x: Iterable[int]) -> None:
    for v in x:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
