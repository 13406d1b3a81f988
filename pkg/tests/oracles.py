"""Slow reference implementations that share no code with gpkd.

Distances come from Floyd-Warshall, geodesics from networkx path enumeration,
and optima from scanning every subset.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

INF = float("inf")


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def floyd_warshall(n: int, edges) -> list[list[float]]:
    dist = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        dist[u][v] = dist[v][u] = 1
    for w in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][w] + dist[w][j] < dist[i][j]:
                    dist[i][j] = dist[i][w] + dist[w][j]
    return dist


def all_geodesics(h: nx.Graph, u: int, v: int) -> list[tuple[int, ...]]:
    if not nx.has_path(h, u, v):
        return []
    return [tuple(p) for p in nx.all_shortest_paths(h, u, v)]


def max_marked(h: nx.Graph, u: int, v: int, s) -> int:
    s = set(s)
    return max((sum(x in s for x in p) for p in all_geodesics(h, u, v)), default=0)


def is_kgdp_naive(h: nx.Graph, s, k: int, d: int) -> bool:
    """Check every geodesic of length <= d between every pair of vertices (not only S-pairs)."""
    s = set(s)
    lengths = dict(nx.all_pairs_shortest_path_length(h))
    for u in h.nodes:
        for v in h.nodes:
            if u < v and v in lengths[u] and lengths[u][v] <= d:
                if max_marked(h, u, v, s) >= k:
                    return False
    return True


def gp_naive(h: nx.Graph, k: int, d: int) -> int:
    """Largest feasible subset by scanning sizes downward."""
    n = h.number_of_nodes()
    for size in range(n, 0, -1):
        if any(is_kgdp_naive(h, s, k, d) for s in combinations(range(n), size)):
            return size
    return 0


def lms_quadratic(ys) -> int:
    """Longest nondecreasing or nonincreasing subsequence length, O(n^2) DP."""
    if not ys:
        return 0
    best = 1
    for sign in (1, -1):
        vals = [sign * y for y in ys]
        dp = [1] * len(vals)
        for i in range(len(vals)):
            for j in range(i):
                if vals[j] <= vals[i]:
                    dp[i] = max(dp[i], dp[j] + 1)
        best = max(best, max(dp))
    return best
