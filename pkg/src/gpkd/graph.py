"""Simple undirected graphs, the named families used throughout, and BFS distances.

Vertices are always ``0..n-1``.  Family generators map the usual 1-based
conventions onto that range:

* ``path:n``      vertex ``i`` in ``1..n``          -> ``i - 1``
* ``cycle:n``     vertex ``i`` in ``0..n-1``        -> ``i``
* ``grid:nxm``    vertex ``(i, j)``, ``i <= n, j <= m`` -> ``(i - 1) * m + (j - 1)``
* ``prism:n``     same as ``grid:nx2``
* ``cylinder:nxm`` is ``P_n x C_m`` and ``torus:nxm`` is ``C_n x C_m``, both
  laid out like ``grid``.

Product families also record 0-based ``coords`` per vertex so that
constructions and exports can speak in (column, row) terms.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from gpkd.errors import DomainError, GraphError

UNREACHABLE = -1
"""Distance sentinel for vertex pairs in different components."""

FAMILIES = ("path", "cycle", "complete", "grid", "prism", "cylinder", "torus")


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    family_tag: str | None = None
    coords: tuple[tuple[int, int], ...] | None = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def __repr__(self) -> str:
        tag = f" {self.family_tag}" if self.family_tag else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"


@dataclass(frozen=True)
class PositionParams:
    """The pair (k, d): forbid k marked vertices on any geodesic of length <= d."""

    k: int
    d: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise DomainError(f"k must be an integer >= 2, got {self.k!r}")
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"d must be an integer >= 1, got {self.d!r}")

    def effective_d(self, diameter: int) -> int:
        # Every geodesic has length <= diameter, so larger d changes nothing.
        return max(1, min(self.d, diameter))


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    family_tag: str | None = None,
    coords: Sequence[tuple[int, int]] | None = None,
) -> Graph:
    """Build a graph on ``0..n-1``; duplicate edges are merged."""
    if int(n) != n or n <= 0:
        raise GraphError(f"vertex count must be positive, got {n!r}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = (int(x) for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    if coords is not None:
        coords = tuple((int(a), int(b)) for a, b in coords)
        if len(coords) != n:
            raise GraphError("coords must give one position per vertex")
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), family_tag, coords)


def path_graph(n: int) -> Graph:
    return build_graph(n, ((i, i + 1) for i in range(n - 1)), f"path:{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return build_graph(n, ((i, (i + 1) % n) for i in range(n)), f"cycle:{n}")


def complete_graph(n: int) -> Graph:
    return build_graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)), f"complete:{n}")


def _product(n: int, m: int, wrap_first: bool, wrap_second: bool, tag: str) -> Graph:
    if n <= 0 or m <= 0:
        raise GraphError(f"product dimensions must be positive, got {n}x{m}")
    if (wrap_first and n < 3) or (wrap_second and m < 3):
        raise GraphError(f"cycle factors need at least 3 vertices ({tag})")
    edges = []
    for i in range(n):
        for j in range(m):
            v = i * m + j
            if i + 1 < n:
                edges.append((v, v + m))
            elif wrap_first:
                edges.append((v, j))
            if j + 1 < m:
                edges.append((v, v + 1))
            elif wrap_second:
                edges.append((v, i * m))
    coords = [(i, j) for i in range(n) for j in range(m)]
    return build_graph(n * m, edges, tag, coords)


def grid_graph(n: int, m: int) -> Graph:
    """``P_n x P_m``; vertex ``(i, j)`` (0-based) is ``i * m + j``."""
    return _product(n, m, False, False, f"grid:{n}x{m}")


def prism_graph(n: int) -> Graph:
    """The thin grid ``P_n x P_2``: column ``i``, row ``j`` is ``2 * i + j``."""
    return _product(n, 2, False, False, f"prism:{n}")


def cylinder_graph(n: int, m: int) -> Graph:
    return _product(n, m, False, True, f"cylinder:{n}x{m}")


def torus_graph(n: int, m: int) -> Graph:
    return _product(n, m, True, True, f"torus:{n}x{m}")


_SPEC_RE = re.compile(r"^\s*([a-z]+)\s*:\s*(\d+)\s*(?:[x×]\s*(\d+))?\s*$")


def parse_family(spec: str) -> tuple[str, tuple[int, ...]]:
    """Split ``"grid:3x4"`` into ``("grid", (3, 4))``."""
    match = _SPEC_RE.match(spec)
    if not match:
        raise GraphError(f"cannot parse family spec {spec!r}; expected e.g. path:14 or grid:3x3")
    name = match.group(1)
    dims = tuple(int(g) for g in match.group(2, 3) if g is not None)
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    two_dim = name in ("grid", "cylinder", "torus")
    if two_dim != (len(dims) == 2):
        shape = "nxm" if two_dim else "n"
        raise GraphError(f"family {name} takes parameters {name}:{shape}, got {spec!r}")
    if any(x <= 0 for x in dims):
        raise GraphError(f"family sizes must be positive, got {spec!r}")
    return name, dims


def build_family(spec: str) -> Graph:
    name, dims = parse_family(spec)
    builders = {
        "path": path_graph,
        "cycle": cycle_graph,
        "complete": complete_graph,
        "grid": grid_graph,
        "prism": prism_graph,
        "cylinder": cylinder_graph,
        "torus": torus_graph,
    }
    return builders[name](*dims)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabelled ``0..len-1``; returns it with the old labels in order."""
    keep = sorted(set(vertices))
    if not keep:
        raise GraphError("induced subgraph needs at least one vertex")
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    coords = [g.coords[v] for v in keep] if g.coords is not None else None
    return build_graph(len(keep), edges, None, coords), keep


# -- distances -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistMatrix:
    """All-pairs BFS distances; ``UNREACHABLE`` marks pairs in different components."""

    dist: np.ndarray
    diameter: int
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __getitem__(self, uv: tuple[int, int]) -> int:
        return int(self.dist[uv])

    def reachable(self, u: int, v: int) -> bool:
        return self.dist[u, v] != UNREACHABLE

    def is_connected(self) -> bool:
        return not bool((self.dist == UNREACHABLE).any())


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distance_matrix(g: Graph) -> DistMatrix:
    dist = np.array([bfs_distances(g, s) for s in range(g.n)], dtype=np.int32)
    dist.setflags(write=False)
    return DistMatrix(dist, int(dist.max(initial=0)))


def diameter(g: Graph) -> int:
    return distance_matrix(g).diameter


def is_connected(g: Graph) -> bool:
    return UNREACHABLE not in bfs_distances(g, 0)


# -- file formats ----------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise GraphError("edge list is empty; expected an 'n m' header")
    (n, m), edges = rows[0], rows[1:]
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges but {len(edges)} were given")
    return build_graph(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"]
    if g.family_tag:
        lines.insert(0, f"# {g.family_tag}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, marked: Iterable[int] = (), name: str = "G") -> str:
    """DOT text; marked vertices are drawn filled black, the rest hollow."""
    marked = set(marked)
    out = [f"graph {name} {{", "  node [shape=circle, width=0.25, fixedsize=true, label=\"\"];"]
    if g.family_tag:
        out.append(f'  label="{g.family_tag}";')
    for v in range(g.n):
        attrs = ['style=filled', 'fillcolor=black' if v in marked else 'fillcolor=white',
                 f'tooltip="{v}"']
        if g.coords is not None:
            x, y = g.coords[v]
            attrs.append(f'pos="{x},{y}!"')
        out.append(f"  {v} [{', '.join(attrs)}];")
    out.extend(f"  {u} -- {v};" for u, v in g.edges())
    out.append("}")
    return "\n".join(out) + "\n"
