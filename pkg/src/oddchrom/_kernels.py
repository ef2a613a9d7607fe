"""Backtracking kernel for odd k-colorability on a CSR adjacency.

The kernel is plain Python over numpy arrays so it runs unchanged without
numba.  When numba is importable and ``ODDCHROM_DISABLE_JIT`` is unset (or
``0``), the same function is compiled with ``@njit``; ``odd_search_py`` is
always the interpreted version.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_ENABLED = numba is not None and os.environ.get("ODDCHROM_DISABLE_JIT", "0").lower() in (
    "",
    "0",
    "false",
    "no",
)


def _odd_search(indptr, indices, order, fixed, k, symmetry):
    """Depth-first search for an odd ``k``-coloring extending ``fixed``.

    Vertices in ``order`` are colored in that sequence with colors tried in
    ascending order, so the first solution found is the lexicographically
    smallest one.  ``symmetry`` caps level ``d`` at one above the largest
    color used so far; only valid when nothing is fixed.

    Pruning is sound only: a vertex whose neighbours are all colored must
    have an odd color, and an uncolored vertex must not see all ``k`` colors.

    Returns ``(found, colors, nodes)``.
    """
    n = fixed.shape[0]
    colors = np.zeros(n, dtype=np.int64)
    # cnt[u, c]: colored neighbours of u with color c
    cnt = np.zeros((n, k + 1), dtype=np.int64)
    oddc = np.zeros(n, dtype=np.int64)
    distinct = np.zeros(n, dtype=np.int64)
    uncol = np.zeros(n, dtype=np.int64)
    for v in range(n):
        uncol[v] = indptr[v + 1] - indptr[v]
    for v in range(n):
        c = fixed[v]
        if c == 0:
            continue
        colors[v] = c
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            uncol[u] -= 1
            cnt[u, c] += 1
            if cnt[u, c] == 1:
                distinct[u] += 1
            if cnt[u, c] & 1:
                oddc[u] += 1
            else:
                oddc[u] -= 1
    for v in range(n):
        if uncol[v] == 0 and indptr[v + 1] > indptr[v] and oddc[v] == 0:
            return False, colors, 0
        if colors[v] == 0 and distinct[v] >= k:
            return False, colors, 0

    m = order.shape[0]
    tried = np.zeros(m + 1, dtype=np.int64)
    maxused = np.zeros(m + 1, dtype=np.int64)
    nodes = 0
    d = 0
    while d >= 0:
        if d == m:
            return True, colors, nodes
        v = order[d]
        if colors[v] != 0:
            c = colors[v]
            colors[v] = 0
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                uncol[u] += 1
                cnt[u, c] -= 1
                if cnt[u, c] == 0:
                    distinct[u] -= 1
                if cnt[u, c] & 1:
                    oddc[u] += 1
                else:
                    oddc[u] -= 1
        limit = k
        if symmetry and maxused[d] + 1 < limit:
            limit = maxused[d] + 1
        c = tried[d] + 1
        placed = False
        while c <= limit:
            if cnt[v, c] != 0:
                c += 1
                continue
            colors[v] = c
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                uncol[u] -= 1
                cnt[u, c] += 1
                if cnt[u, c] == 1:
                    distinct[u] += 1
                if cnt[u, c] & 1:
                    oddc[u] += 1
                else:
                    oddc[u] -= 1
            nodes += 1
            ok = not (uncol[v] == 0 and indptr[v + 1] > indptr[v] and oddc[v] == 0)
            if ok:
                for p in range(indptr[v], indptr[v + 1]):
                    u = indices[p]
                    if uncol[u] == 0 and oddc[u] == 0:
                        ok = False
                        break
                    if colors[u] == 0 and distinct[u] >= k:
                        ok = False
                        break
            if ok:
                placed = True
                break
            colors[v] = 0
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                uncol[u] += 1
                cnt[u, c] -= 1
                if cnt[u, c] == 0:
                    distinct[u] -= 1
                if cnt[u, c] & 1:
                    oddc[u] += 1
                else:
                    oddc[u] -= 1
            c += 1
        if placed:
            tried[d] = c
            maxused[d + 1] = max(maxused[d], c)
            d += 1
            tried[d] = 0
        else:
            tried[d] = 0
            d -= 1
    return False, colors, nodes


odd_search_py = _odd_search
odd_search = numba.njit(cache=True)(_odd_search) if JIT_ENABLED else _odd_search
