"""Colorings, odd-color sets, the odd-coloring verifier and 2-neighbour recoloring.

Colors are ``1..k``; ``0`` marks an uncolored vertex.  The witness of a
vertex is the smallest color occurring an odd number of times among its
neighbours.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import AbstractGraph, is_convenient

UNCOLORED = 0


class ColoringError(ValueError):
    pass


class UncoloredNeighborError(ColoringError):
    pass


class NotConvenientError(ColoringError):
    pass


class PaletteExhaustedError(ColoringError):
    pass


@dataclass(frozen=True)
class Coloring:
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ColoringError(f"palette size must be positive, got {self.k}")
        for v, c in enumerate(self.colors):
            if not 0 <= c <= self.k:
                raise ColoringError(f"vertex {v} has color {c} outside 1..{self.k}")

    @classmethod
    def empty(cls, n: int, k: int) -> "Coloring":
        return cls(k, (UNCOLORED,) * n)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def is_total(self) -> bool:
        return all(self.colors)

    def updated(self, changes: Mapping[int, int]) -> "Coloring":
        colors = list(self.colors)
        for v, c in changes.items():
            colors[v] = c
        return Coloring(self.k, tuple(colors))

    def permuted(self, perm: Mapping[int, int]) -> "Coloring":
        """Apply a palette permutation (color -> color) to every vertex."""
        return Coloring(self.k, tuple(perm[c] if c else 0 for c in self.colors))


def odd_colors(
    g: AbstractGraph,
    c: Coloring,
    v: int,
    ignore: Iterable[int] = (),
    skip_uncolored: bool = False,
) -> frozenset[int]:
    """Colors with odd multiplicity among the neighbours of ``v`` (minus ``ignore``)."""
    skip = set(ignore)
    counts: Counter[int] = Counter()
    for u in g.adj[v]:
        if u in skip:
            continue
        col = c.colors[u]
        if col == UNCOLORED:
            if skip_uncolored:
                continue
            raise UncoloredNeighborError(f"neighbour {u} of {v} is uncolored")
        counts[col] += 1
    return frozenset(col for col, m in counts.items() if m % 2)


def odd_color_set(g: AbstractGraph, c: Coloring, v: int) -> frozenset[int]:
    return odd_colors(g, c, v)


def witness(
    g: AbstractGraph, c: Coloring, v: int, ignore: Iterable[int] = (), skip_uncolored: bool = True
) -> int | None:
    """Smallest odd color of ``v``, or None when the odd set is empty."""
    s = odd_colors(g, c, v, ignore, skip_uncolored=skip_uncolored)
    return min(s) if s else None


@dataclass
class OddCertificate:
    valid: bool
    violations: list[dict] = field(default_factory=list)
    witnesses: dict[int, int] = field(default_factory=dict)
    odd_sets: dict[int, list[int]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": self.violations,
            "witnesses": {str(v): w for v, w in sorted(self.witnesses.items())},
        }


def verify_odd_coloring(g: AbstractGraph, c: Coloring, k: int) -> OddCertificate:
    """Check properness, palette range and the odd condition; list every violation."""
    violations: list[dict] = []
    if len(c) != g.n:
        violations.append({"kind": "length", "expected": g.n, "got": len(c)})
        return OddCertificate(False, violations)
    for v, col in enumerate(c.colors):
        if col == UNCOLORED:
            violations.append({"kind": "uncolored", "vertex": v})
        elif col > k:
            violations.append({"kind": "out-of-range", "vertex": v, "color": col})
    for u, v in g.edges():
        if c.colors[u] and c.colors[u] == c.colors[v]:
            violations.append({"kind": "improper", "edge": [u, v], "color": c.colors[u]})
    witnesses: dict[int, int] = {}
    odd_sets: dict[int, list[int]] = {}
    for v in range(g.n):
        if not g.adj[v]:
            continue
        s = odd_colors(g, c, v, skip_uncolored=True)
        odd_sets[v] = sorted(s)
        if s:
            witnesses[v] = min(s)
        else:
            violations.append({"kind": "no-odd-color", "vertex": v})
    return OddCertificate(not violations, violations, witnesses, odd_sets)


def is_odd_coloring(g: AbstractGraph, c: Coloring, k: int) -> bool:
    return verify_odd_coloring(g, c, k).valid


def first_free(avoid: Iterable[int | None], k: int) -> int | None:
    banned = set(avoid)
    for col in range(1, k + 1):
        if col not in banned:
            return col
    return None


def recolor_two_neighbor(g: AbstractGraph, c: Coloring, v: int, k: int = 8) -> Coloring:
    """Give the convenient vertex ``v`` an odd color by recoloring one 2-neighbour.

    Odd-degree vertices always have an odd color in a proper coloring, so the
    coloring is returned unchanged.  Otherwise the lowest-id 2-neighbour ``v'``
    (other neighbour ``u``) is recolored avoiding ``c(v)``, ``c(u)`` and the
    witnesses of ``v`` and ``u`` computed without ``v'``.
    """
    if not is_convenient(g, v):
        raise NotConvenientError(f"vertex {v} is not convenient")
    if g.degree(v) % 2 == 1:
        return c
    vp = min(x for x in g.adj[v] if g.degree(x) == 2)
    (u,) = g.adj[vp] - {v}
    avoid = {
        c.colors[v],
        witness(g, c, v, ignore=(vp,)),
        c.colors[u],
        witness(g, c, u, ignore=(vp,)),
    }
    col = first_free(avoid, k)
    if col is None:
        raise PaletteExhaustedError(f"no free color for 2-vertex {vp} with k={k}")
    return c.updated({vp: col})
