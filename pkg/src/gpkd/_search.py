"""Compiled depth-first search over feasible vertex sets.

State kept per search depth:

``M[x, y]``
    the largest number of chosen vertices on any x-y geodesic, for every pair
    with ``d(x, y) <= d``.  Adding ``c`` only touches pairs whose geodesics can
    pass through ``c`` (``d(x, c) + d(c, y) = d(x, y) <= d``), where the new
    value is ``max(M[x, y], M[x, c] + M[c, y] + 1)``.
``cands``
    the vertices after the last chosen one that can still be added on their own.

Sets are generated in "next included vertex" order, which visits them
include-first in ascending vertex order, so with a single worker the first
optimum found is the lexicographically least one.  The kernel can pause after
a node quota and resume from the saved arrays; budgets and progress are
handled by the Python driver around it.
"""

from __future__ import annotations

import numpy as np
from numba import njit

DONE = 0
PAUSED = 1


def through_pairs(dist: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR lists of pairs ``(x, y)`` with ``c`` on some x-y geodesic of length <= d."""
    n = dist.shape[0]
    reach = dist >= 0
    short = reach & (dist <= d)
    ptr = np.zeros(n + 1, dtype=np.int64)
    xs, ys = [], []
    for c in range(n):
        via = dist[:, c][:, None] + dist[c, :][None, :]
        ok = short & (via == dist) & reach[:, c][:, None] & reach[c, :][None, :]
        x, y = np.nonzero(ok)
        xs.append(x)
        ys.append(y)
        ptr[c + 1] = ptr[c] + len(x)
    px = np.concatenate(xs).astype(np.int32) if xs else np.zeros(0, np.int32)
    py = np.concatenate(ys).astype(np.int32) if ys else np.zeros(0, np.int32)
    return ptr, px, py


@njit(cache=True)
def _try_insert(chain, length, c, dist, d):
    """Insert ``c`` into a geodesic chain in place; returns the new length or -1."""
    first = chain[0]
    last = chain[length - 1]
    span = dist[first, last]
    dfc = dist[first, c]
    dlc = dist[last, c]
    if dfc < 0 or dlc < 0:
        return -1
    if dfc == span + dlc and dfc <= d:
        chain[length] = c
        return length + 1
    if dlc == span + dfc and dlc <= d:
        for t in range(length, 0, -1):
            chain[t] = chain[t - 1]
        chain[0] = c
        return length + 1
    for t in range(length - 1):
        a = chain[t]
        b = chain[t + 1]
        if dist[a, c] + dist[c, b] == dist[a, b]:
            for u in range(length, t + 1, -1):
                chain[u] = chain[u - 1]
            chain[t + 1] = c
            return length + 1
    return -1


@njit(cache=True)
def _cover_bound(cand_row, ncand, chosen, size, dist, d, k, chains, lens, scratch):
    """Upper bound on how many candidates can still be added.

    Candidates are greedily packed into chains that lie on one geodesic of
    length <= d; a chain can absorb at most ``k - 1`` minus the chosen vertices
    that also fit on its geodesic.
    """
    nch = 0
    for i in range(ncand):
        c = cand_row[i]
        placed = False
        for j in range(nch):
            new_len = _try_insert(chains[j], lens[j], c, dist, d)
            if new_len > 0:
                lens[j] = new_len
                placed = True
                break
        if not placed:
            chains[nch, 0] = c
            lens[nch] = 1
            nch += 1
    total = 0
    for j in range(nch):
        length = lens[j]
        for t in range(length):
            scratch[t] = chains[j, t]
        on_chain = 0
        for s in range(size):
            new_len = _try_insert(scratch, length, chosen[s], dist, d)
            if new_len > 0:
                length = new_len
                on_chain += 1
                if on_chain >= k - 1:
                    break
        cap = k - 1 - on_chain
        if cap > 0:
            total += min(cap, lens[j])
    return total


@njit(cache=True)
def run_search(k, d, dist, ptr, px, py, use_cover,
               Ms, cands, ncand, pos, nodebound, chosen,
               scalars, best_set, shared, node_quota, root_limit):
    """Advance the search by at most ``node_quota`` nodes.

    ``scalars`` holds ``[depth, thresh, own_best, nodes]``; ``shared[0]`` is an
    incumbent size other workers may raise.
    """
    n = dist.shape[0]
    depth = scalars[0]
    thresh = scalars[1]
    own_best = scalars[2]
    nodes = scalars[3]
    stop_at = nodes + node_quota
    chains = np.empty((n, n + 1), dtype=np.int32)
    lens = np.empty(n, dtype=np.int32)
    scratch = np.empty(2 * n + 1, dtype=np.int32)
    while depth >= 0:
        sb = shared[0]
        if sb > thresh:
            thresh = sb
        i = pos[depth]
        cnt = ncand[depth]
        if (i >= cnt or depth + (cnt - i) <= thresh or nodebound[depth] <= thresh
                or (depth == 0 and i >= root_limit)):
            depth -= 1
            continue
        if nodes >= stop_at:
            scalars[0] = depth
            scalars[1] = thresh
            scalars[2] = own_best
            scalars[3] = nodes
            return PAUSED
        pos[depth] = i + 1
        c = cands[depth, i]
        nodes += 1
        parent = Ms[depth]
        child = Ms[depth + 1]
        child[:, :] = parent
        for t in range(ptr[c], ptr[c + 1]):
            x = px[t]
            y = py[t]
            val = parent[x, c] + parent[c, y] + 1
            if val > child[x, y]:
                child[x, y] = val
        chosen[depth] = c
        m2 = 0
        for j in range(i + 1, cnt):
            c2 = cands[depth, j]
            ok = True
            for t in range(ptr[c2], ptr[c2 + 1]):
                if child[px[t], c2] + child[c2, py[t]] + 1 >= k:
                    ok = False
                    break
            if ok:
                cands[depth + 1, m2] = c2
                m2 += 1
        size = depth + 1
        ncand[size] = m2
        pos[size] = 0
        if size > thresh:
            thresh = size
            own_best = size
            for t in range(size):
                best_set[t] = chosen[t]
            if size > shared[0]:
                shared[0] = size
        if use_cover and m2 > 0 and size + m2 > thresh:
            for t in range(m2):
                lens[t] = 0
            nodebound[size] = size + _cover_bound(cands[size], m2, chosen, size, dist, d, k,
                                                  chains, lens, scratch)
        else:
            nodebound[size] = size + m2
        depth = size
    scalars[0] = -1
    scalars[1] = thresh
    scalars[2] = own_best
    scalars[3] = nodes
    return DONE


class SearchState:
    """Arrays for one resumable search, optionally starting below a fixed first vertex."""

    def __init__(self, dist, k, d, use_cover, lower=0, first=None, tables=None):
        n = dist.shape[0]
        self.n = n
        self.k = k
        self.d = d
        self.dist = np.ascontiguousarray(dist, dtype=np.int32)
        self.ptr, self.px, self.py = tables if tables is not None else through_pairs(self.dist, d)
        self.use_cover = bool(use_cover)
        self.Ms = np.zeros((n + 1, n, n), dtype=np.int16)
        self.cands = np.zeros((n + 1, n), dtype=np.int32)
        self.ncand = np.zeros(n + 1, dtype=np.int64)
        self.pos = np.zeros(n + 1, dtype=np.int64)
        self.nodebound = np.zeros(n + 1, dtype=np.int64)
        self.chosen = np.zeros(n, dtype=np.int32)
        self.best_set = np.zeros(n, dtype=np.int32)
        # Sets smaller than `lower` are never reported, so ties with a warm start are kept.
        self.scalars = np.array([0, lower - 1, 0, 0], dtype=np.int64)
        if first is None:
            self.cands[0, :] = np.arange(n, dtype=np.int32)
            self.ncand[0] = n
            self.nodebound[0] = n
            self.root_limit = n
        else:
            # Only `first` is branched on at the root; later vertices stay available below it.
            rest = np.arange(first, n, dtype=np.int32)
            self.cands[0, : len(rest)] = rest
            self.ncand[0] = len(rest)
            self.nodebound[0] = n
            self.root_limit = 1

    @property
    def done(self) -> bool:
        return self.scalars[0] < 0

    @property
    def nodes(self) -> int:
        return int(self.scalars[3])

    @property
    def best_size(self) -> int:
        return int(self.scalars[2])

    def witness(self) -> list[int]:
        return sorted(int(v) for v in self.best_set[: self.best_size])

    def advance(self, shared: np.ndarray, quota: int) -> int:
        return run_search(self.k, self.d, self.dist, self.ptr, self.px, self.py, self.use_cover,
                          self.Ms, self.cands, self.ncand, self.pos, self.nodebound, self.chosen,
                          self.scalars, self.best_set, shared, quota, self.root_limit)
