"""Odd chromatic number: backtracking search and an exhaustive oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .coloring import Coloring, ColoringError
from .graph import AbstractGraph

BRUTE_FORCE_MAX_VERTICES = 10
_CHUNK = 1 << 18


class SizeGuardError(ValueError):
    pass


class ImproperPartialError(ColoringError):
    pass


@dataclass
class SolveResult:
    chi_odd: int | None  # None: exceeds kmax
    witness: Coloring | None
    nodes_explored: int
    kmax: int

    def to_json(self) -> dict:
        return {
            "chiOdd": self.chi_odd,
            "witness": list(self.witness.colors) if self.witness else None,
            "nodesExplored": self.nodes_explored,
        }


def csr(g: AbstractGraph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for v in range(g.n):
        indptr[v + 1] = indptr[v] + len(g.adj[v])
    indices = np.fromiter(
        (u for v in range(g.n) for u in sorted(g.adj[v])), dtype=np.int64, count=int(indptr[-1])
    )
    return indptr, indices


def degree_order(g: AbstractGraph, skip: set[int] | frozenset[int] = frozenset()) -> np.ndarray:
    """Vertices by descending degree, ties by id."""
    verts = sorted((v for v in range(g.n) if v not in skip), key=lambda v: (-len(g.adj[v]), v))
    return np.array(verts, dtype=np.int64)


def _search(g, k, fixed, symmetry, use_jit=True):
    indptr, indices = csr(g)
    fixed_arr = np.array(fixed, dtype=np.int64) if g.n else np.zeros(0, dtype=np.int64)
    order = degree_order(g, {v for v, c in enumerate(fixed) if c})
    kernel = _kernels.odd_search if use_jit else _kernels.odd_search_py
    found, colors, nodes = kernel(indptr, indices, order, fixed_arr, np.int64(k), symmetry)
    witness = Coloring(k, tuple(int(c) for c in colors)) if found else None
    return witness, int(nodes)


def find_odd_coloring(g: AbstractGraph, k: int, *, use_jit: bool = True) -> tuple[Coloring | None, int]:
    """First odd ``k``-coloring in search order, plus the node count."""
    return _search(g, k, [0] * g.n, True, use_jit)


def exact_chi_odd(g: AbstractGraph, kmax: int = 8, *, use_jit: bool = True) -> SolveResult:
    nodes = 0
    for k in range(1, kmax + 1):
        witness, explored = find_odd_coloring(g, k, use_jit=use_jit)
        nodes += explored
        if witness is not None:
            return SolveResult(k, witness, nodes, kmax)
    return SolveResult(None, None, nodes, kmax)


def extend_partial(g: AbstractGraph, c: Coloring, k: int) -> Coloring | None:
    """Complete ``c`` to an odd ``k``-coloring without touching colored vertices."""
    if len(c) != g.n:
        raise ColoringError(f"coloring has {len(c)} entries for {g.n} vertices")
    for u, v in g.edges():
        if c[u] and c[u] == c[v]:
            raise ImproperPartialError(f"vertices {u} and {v} share color {c[u]}")
    if any(col > k for col in c.colors):
        return None
    witness, _ = _search(g, k, list(c.colors), False)
    return witness


def _assignments(n: int, k: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the base-``k`` enumeration, vertex 0 most significant."""
    codes = np.arange(start, stop, dtype=np.int64)
    out = np.empty((codes.size, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = codes % k + 1
        codes //= k
    return out


def _valid_rows(g: AbstractGraph, rows: np.ndarray, k: int) -> np.ndarray:
    ok = np.ones(rows.shape[0], dtype=bool)
    for u, v in g.edges():
        ok &= rows[:, u] != rows[:, v]
    idx = np.flatnonzero(ok)
    for v in range(g.n):
        if idx.size == 0:
            break
        nbrs = sorted(g.adj[v])
        if not nbrs:
            continue
        sub = rows[np.ix_(idx, nbrs)]
        has_odd = np.zeros(idx.size, dtype=bool)
        for col in range(1, k + 1):
            has_odd |= ((sub == col).sum(axis=1) & 1).astype(bool)
        idx = idx[has_odd]
    return idx


def brute_force_chi_odd(g: AbstractGraph, kmax: int = 8) -> SolveResult:
    """Enumerate every assignment for k = 1, 2, ...; exhaustive and slow."""
    if g.n > BRUTE_FORCE_MAX_VERTICES:
        raise SizeGuardError(
            f"brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {g.n}"
        )
    examined = 0
    for k in range(1, kmax + 1):
        if g.n == 0:
            return SolveResult(k, Coloring(k, ()), 1, kmax)
        total = k**g.n
        for start in range(0, total, _CHUNK):
            rows = _assignments(g.n, k, start, min(total, start + _CHUNK))
            idx = _valid_rows(g, rows, k)
            if idx.size:
                examined += int(idx[0]) + 1
                witness = Coloring(k, tuple(int(x) for x in rows[idx[0]]))
                return SolveResult(k, witness, examined, kmax)
            examined += rows.shape[0]
    return SolveResult(None, None, examined, kmax)
