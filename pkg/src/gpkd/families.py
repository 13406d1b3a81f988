"""Extremal constructions and the monotone-subsequence tools used on grids.

All outputs are sorted lists of 0-based vertex labels in the layouts of
:mod:`gpkd.graph`.  In the thin grid ``P_n x P_2`` column ``i`` (1-based) and
row ``j`` in ``{1, 2}`` is vertex ``2 * (i - 1) + (j - 1)``.
"""

from __future__ import annotations

import warnings
from bisect import bisect_right
from itertools import combinations
from typing import Iterable, Sequence

from gpkd.errors import DomainError, GraphError
from gpkd.geodesy import on_common_geodesic
from gpkd.graph import Graph, distance_matrix


def j_set(n: int, m: int, r: int = 0) -> list[int]:
    """The maximally even set ``{floor((n*i + r) / m) : 0 <= i < m}`` on ``C_n``."""
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if not 0 <= r <= n - 1:
        raise DomainError(f"need 0 <= r <= n-1, got r={r}")
    return [(n * i + r) // m for i in range(m)]


def path_block_set(k: int, d: int, n: int) -> list[int]:
    """Blocks of ``k - 1`` consecutive vertices starting every ``d + 1`` vertices of ``P_n``."""
    if k - 1 > d:
        raise DomainError(f"path blocks need k - 1 <= d, got k={k}, d={d}")
    if n < 1:
        raise DomainError("path length must be positive")
    return [v for v in range(n) if v % (d + 1) < k - 1]


def prism_vertex(column: int, row: int) -> int:
    """Label of the 1-based (column, row) position in ``P_n x P_2``."""
    return 2 * (column - 1) + (row - 1)


def thin_grid_A(k: int, d: int, n: int) -> list[int]:
    """Zig-zag blocks of ``2k - 3`` vertices every ``d`` columns of ``P_n x P_2``.

    Block ``s`` covers columns ``d*s + 1 .. d*s + 2k - 3``.  The ``t``-th column
    of the block (``t = 1 .. 2k-3``) sits in row 2 when ``t + s`` is even, so
    consecutive blocks start in alternating rows.  Taking the parity of the
    global column instead would put every block's first vertex in row 1 when
    ``d`` is odd, and then a straight row-1 geodesic picks up ``k`` vertices.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    if d < 2 * k - 3:
        raise DomainError(f"the zig-zag construction needs d >= 2k - 3, got k={k}, d={d}")
    out = []
    for s in range(n // d + 1):
        for t in range(1, 2 * k - 2):
            i = d * s + t
            if i > n:
                break
            out.append(prism_vertex(i, 2 if (t + s) % 2 == 0 else 1))
    return sorted(out)


def thin_grid_B(k: int, d: int, n: int) -> list[int]:
    """Full columns ``d*s + 1 .. d*s + k - 2`` (both rows) for every block ``s``."""
    if k < 2:
        raise DomainError("k must be at least 2")
    if d < k - 2:
        raise DomainError(f"the column-block construction needs d >= k - 2, got k={k}, d={d}")
    if k == 2:
        warnings.warn("thin_grid_B with k = 2 has empty blocks; returning the empty set", stacklevel=2)
        return []
    out = []
    for s in range(n // d + 1):
        for i in range(d * s + 1, d * s + k - 1):
            if i > n:
                break
            out.extend((prism_vertex(i, 1), prism_vertex(i, 2)))
    return sorted(out)


def diamond_set(r: int, center: tuple[int, int], rows: int, cols: int) -> list[int]:
    """Grid points within L1 distance ``r`` of ``center`` whose distance has the parity of ``r``.

    Coordinates are 0-based ``(row, col)`` in ``P_rows x P_cols``.
    """
    if r < 0:
        raise DomainError("radius must be nonnegative")
    cx, cy = center
    if cx - r < 0 or cy - r < 0 or cx + r >= rows or cy + r >= cols:
        raise DomainError(f"diamond of radius {r} at {center} does not fit in a {rows}x{cols} grid")
    out = []
    for x in range(cx - r, cx + r + 1):
        for y in range(cy - r, cy + r + 1):
            dist = abs(x - cx) + abs(y - cy)
            if dist <= r and (r - dist) % 2 == 0:
                out.append(x * cols + y)
    return sorted(out)


def diamond_for_k(k: int) -> tuple[int, tuple[int, int], int]:
    """Radius, center and side of the ``(k-1)^2`` diamond inside ``P_{2k-3} x P_{2k-3}``."""
    if k < 2:
        raise DomainError("k must be at least 2")
    return k - 2, (k - 2, k - 2), 2 * k - 3


# -- monotone subsequences ---------------------------------------------------


def _longest_nondecreasing(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    tails: list[int] = []
    tail_idx: list[int] = []
    prev = [-1] * len(points)
    for idx, (_, y) in enumerate(points):
        slot = bisect_right(tails, y)
        if slot == len(tails):
            tails.append(y)
            tail_idx.append(idx)
        else:
            tails[slot] = y
            tail_idx[slot] = idx
        prev[idx] = tail_idx[slot - 1] if slot else -1
    out = []
    idx = tail_idx[-1] if tail_idx else -1
    while idx >= 0:
        out.append(points[idx])
        idx = prev[idx]
    return out[::-1]


def longest_monotone_subsequence(points: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    """A largest subset that, sorted by first coordinate, is monotone in the second.

    Ties are allowed in both coordinates; the result is returned in sorted order.
    """
    pts = [(int(x), int(y)) for x, y in points]
    up = _longest_nondecreasing(sorted(pts))
    flipped = sorted((x, -y) for x, y in pts)
    down = [(x, -y) for x, y in _longest_nondecreasing(flipped)]
    return up if len(up) >= len(down) else down


def is_monotone(points: Sequence[Sequence[int]]) -> bool:
    pts = sorted((int(x), int(y)) for x, y in points)
    ys = [y for _, y in pts]
    if all(a <= b for a, b in zip(ys, ys[1:])):
        return True
    pts = sorted(((int(x), -int(y)) for x, y in points))
    ys = [-y for _, y in pts]
    return all(a >= b for a, b in zip(ys, ys[1:]))


def check_k_monotone_geodesic_labeling(g: Graph, k: int) -> bool:
    """Every monotone k-subset (under the grid coordinates) lies on one geodesic of ``g``."""
    if g.coords is None or (g.family_tag or "").split(":")[0] in ("cylinder", "torus"):
        raise GraphError("monotone-geodesic labelings are checked on grid graphs with coordinates")
    if k < 2:
        raise DomainError("k must be at least 2")
    dm = distance_matrix(g)
    for tup in combinations(range(g.n), k):
        if is_monotone([g.coords[v] for v in tup]) and not on_common_geodesic(dm, tup):
            return False
    return True


def format_vertex_csv(vertices: Iterable[int], coords: Sequence[tuple[int, int]] | None = None) -> str:
    if coords is None:
        rows = ["vertex"] + [str(v) for v in sorted(vertices)]
    else:
        rows = ["vertex,i,j"] + [f"{v},{coords[v][0]},{coords[v][1]}" for v in sorted(vertices)]
    return "\n".join(rows) + "\n"
