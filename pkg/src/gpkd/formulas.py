"""Closed-form values of gp^k_d for paths, cycles and thin grids ``P_n x P_2``."""

from __future__ import annotations

import logging
import math

from gpkd.errors import DomainError
from gpkd.families import thin_grid_A, thin_grid_B
from gpkd.graph import PositionParams

log = logging.getLogger(__name__)


def _params(p: PositionParams | tuple[int, int]) -> PositionParams:
    return p if isinstance(p, PositionParams) else PositionParams(*p)


def gp_path(n: int, p: PositionParams | tuple[int, int]) -> int:
    p = _params(p)
    if n < 1:
        raise DomainError(f"path length must be positive, got {n}")
    k, d = p.k, p.d
    if d <= k - 2:
        return n
    return (k - 1) * (n // (d + 1)) + min(n % (d + 1), k - 1)


def gp_cycle(n: int, p: PositionParams | tuple[int, int]) -> int:
    """Value on ``C_n``; refuses ``d > n // 2`` outside the all-vertices regime."""
    p = _params(p)
    if n < 3:
        raise DomainError(f"cycles need n >= 3, got {n}")
    k, d = p.k, p.d
    if d <= k - 2:
        return n
    if d > n // 2:
        raise DomainError(
            f"no cycle formula for d={d} > floor(n/2)={n // 2} with k={k}; solve it exactly instead"
        )
    return ((k - 1) * n) // (d + 1)


def prism_case(n: int, p: PositionParams | tuple[int, int]) -> tuple[int, str]:
    """Value on ``P_n x P_2`` together with the label of the case that produced it."""
    p = _params(p)
    if n < 1:
        raise DomainError(f"grid length must be positive, got {n}")
    k, d = p.k, p.d
    if d <= k - 2:
        return 2 * n, "all-vertices"
    if k == 2:
        return math.ceil(n / d), "k=2"
    q, r = divmod(n, d)
    if k == 3:
        if n <= d:
            return (2 if n == 1 else min(n, 3)), "k=3 (1)"
        if d == 2:
            return 2 * (n // 2) + 2 * min(n % 2, 1), "k=3 (2) d=2"
        return 3 * q + min(r, 3), "k=3 (2) d>=3"
    # k >= 4 and d >= k - 1 from here on
    if n <= d:
        if n <= 2 * k - 4:
            return 2 * min(n, k - 2), "1"
        return 2 * k - 3, "1"
    if d < 2 * k - 3:
        return (2 * k - 4) * q + 2 * min(r, k - 2), "2"
    if r <= k - 2:
        if r <= q:
            return (2 * k - 3) * q + r, "3(a)i"
        return (2 * k - 4) * q + 2 * r, "3(a)ii"
    if r < 2 * k - 3:
        if 2 * k - 4 - r <= q:
            return (2 * k - 3) * q + r, "3(b)i"
        return (2 * k - 4) * (q + 1), "3(b)ii"
    return (2 * k - 3) * (q + 1), "3(c)"


def gp_prism(n: int, p: PositionParams | tuple[int, int]) -> int:
    value, case = prism_case(n, p)
    log.debug("gp_prism(n=%d, %s) = %d via case %s", n, p, value, case)
    return value


def gp_prism_via_constructions(n: int, p: PositionParams | tuple[int, int]) -> int:
    """The k >= 4 thin-grid value read off the two block constructions."""
    p = _params(p)
    k, d = p.k, p.d
    if k < 4 or d < k - 1:
        raise DomainError(f"construction form needs k >= 4 and d >= k - 1, got k={k}, d={d}")
    if n < 1:
        raise DomainError(f"grid length must be positive, got {n}")
    if n <= d:
        if n < 2 * k - 3:
            return len(thin_grid_B(k, d, n))
        return len(thin_grid_A(k, d, n))
    if d < 2 * k - 3:
        return len(thin_grid_B(k, d, n))
    return max(len(thin_grid_A(k, d, n)), len(thin_grid_B(k, d, n)))


def path_identity_rhs(n: int, p: PositionParams | tuple[int, int]) -> int:
    """``max(gp_path(n, 2k-2, d-1), 2 * gp_path(n, k-1, d-1))``; meaningful for n > d >= 2k-3."""
    p = _params(p)
    k, d = p.k, p.d
    if k < 3 or d < 2:
        raise DomainError("the path-form identity needs k >= 3 and d >= 2")
    return max(gp_path(n, (2 * k - 2, d - 1)), 2 * gp_path(n, (k - 1, d - 1)))


def formula_for_family(family: str, n: int, p: PositionParams | tuple[int, int]) -> int:
    funcs = {"path": gp_path, "cycle": gp_cycle, "prism": gp_prism}
    if family not in funcs:
        raise DomainError(f"no closed form for family {family!r}; known: {', '.join(funcs)}")
    return funcs[family](n, p)
