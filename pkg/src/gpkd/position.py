"""The k-general d-position predicate, violation witnesses, cycle spectra, and
the clique-structure test for general d-position sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable

from gpkd.errors import DomainError, GraphError
from gpkd.geodesy import (
    GeodesicWitness,
    are_parallel,
    best_marked_geodesic,
    geodesic_dag,
    max_marked_on_geodesic,
    set_distance,
)
from gpkd.graph import DistMatrix, Graph, PositionParams


@dataclass(frozen=True)
class Violation:
    """A geodesic of length <= d carrying at least k marked vertices."""

    witness: GeodesicWitness
    k: int
    d: int

    def __post_init__(self):
        assert self.witness.length <= self.d and self.witness.count_in_S >= self.k


def _normalise_set(g: Graph, s: Iterable[int]) -> list[int]:
    out = sorted(set(int(v) for v in s))
    for v in out:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    return out


def _violating_pairs(g: Graph, dm: DistMatrix, s: list[int], p: PositionParams):
    # A violating geodesic can be trimmed to start and end in S, so only S-pairs matter.
    d = p.effective_d(dm.diameter)
    k = p.k
    marked = frozenset(s)
    if len(s) < k:
        return
    dist = dm.dist
    for i, u in enumerate(s):
        for v in s[i + 1:]:
            duv = dist[u, v]
            if duv < 0 or duv > d or duv + 1 < k:
                continue
            dag = geodesic_dag(g, dm, u, v)
            if max_marked_on_geodesic(dag, marked) >= k:
                yield dag, marked, d


def is_kgdp(g: Graph, dm: DistMatrix, s: Iterable[int], p: PositionParams) -> bool:
    """True iff no geodesic of length <= d contains k or more vertices of ``s``."""
    for _ in _violating_pairs(g, dm, _normalise_set(g, s), p):
        return False
    return True


def find_violation(g: Graph, dm: DistMatrix, s: Iterable[int], p: PositionParams) -> Violation | None:
    for dag, marked, d in _violating_pairs(g, dm, _normalise_set(g, s), p):
        return Violation(best_marked_geodesic(dag, marked), p.k, d)
    return None


# -- cycles ----------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumMultiset:
    span: int
    values: tuple[int, ...]
    kind: str = "clockwise"

    @property
    def support(self) -> list[int]:
        return sorted(set(self.values))


def _check_cyclic_set(n: int, a: Iterable[int]) -> list[int]:
    out = sorted(set(int(x) for x in a))
    if any(not 0 <= x < n for x in out):
        raise DomainError(f"cycle vertices must lie in 0..{n - 1}")
    return out


def clockwise_spectrum(n: int, a: Iterable[int], span: int) -> SpectrumMultiset:
    """Clockwise distances ``(a[i+span] - a[i]) mod n`` over every starting index."""
    pts = _check_cyclic_set(n, a)
    m = len(pts)
    if m < 2 or not 1 <= span <= m - 1:
        raise DomainError(f"span must lie in 1..{m - 1} for a set of size {m}")
    values = sorted((pts[(i + span) % m] - pts[i]) % n for i in range(m))
    return SpectrumMultiset(span, tuple(values), "clockwise")


def geodesic_spectrum(n: int, a: Iterable[int], span: int) -> SpectrumMultiset:
    cw = clockwise_spectrum(n, a, span)
    return SpectrumMultiset(span, tuple(sorted(min(c, n - c) for c in cw.values)), "geodesic")


def is_maximally_even(n: int, a: Iterable[int]) -> bool:
    pts = _check_cyclic_set(n, a)
    if not pts:
        raise DomainError("maximal evenness is defined for nonempty sets")
    for span in range(1, len(pts)):
        support = clockwise_spectrum(n, pts, span).support
        if support[-1] - support[0] > 1:
            return False
    return True


def j_representation_support(n: int, m: int, span: int) -> set[int]:
    """The two-value support every J-set spectrum must have: floor and ceil of n*span/m."""
    return {(n * span) // m, math.ceil(n * span / m)}


# -- clique structure --------------------------------------------------------


def clique_components(g: Graph, s: Iterable[int]) -> list[list[int]] | None:
    """Components of ``G[s]``, or None when one of them is not complete."""
    members = set(s)
    seen: set[int] = set()
    parts = []
    for start in sorted(members):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adjacency[x]:
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comp.sort()
        if any(not g.has_edge(a, b) for a, b in combinations(comp, 2)):
            return None
        parts.append(comp)
    return parts


def check_structure_general_d_position(g: Graph, dm: DistMatrix, s: Iterable[int], d: int) -> bool:
    """Clique/parallelism characterisation of general d-position sets (k = 3, d >= 2).

    Holds iff ``G[s]`` is a disjoint union of cliques, non-parallel cliques are at
    distance >= d, and for any three cliques whose distances add up along
    ``Qi - Qj - Qk`` the outer distance exceeds d.
    """
    if d < 2:
        raise DomainError("the clique characterisation is only stated for d >= 2")
    if not dm.is_connected():
        raise GraphError("the clique characterisation requires a connected graph")
    cliques = clique_components(g, _normalise_set(g, s))
    if cliques is None:
        return False
    count = len(cliques)
    between = [[0] * count for _ in range(count)]
    for i, j in combinations(range(count), 2):
        between[i][j] = between[j][i] = set_distance(dm, cliques[i], cliques[j])
        if between[i][j] < d and not are_parallel(g, cliques[i], cliques[j], dm):
            return False
    for i, j, k in permutations(range(count), 3):
        if i < k and between[i][j] + between[j][k] == between[i][k] and between[i][k] <= d:
            return False
    return True
