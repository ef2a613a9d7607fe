"""Reducible configurations: detection, reduction and extension of odd 8-colorings.

Each configuration tag comes with a reduction building a smaller graph and a
recoloring recipe lifting an odd 8-coloring of the reduced graph back.  The
recipe is tried first; if it leaves no legal color or the result fails
verification, the vertices the recipe may touch are cleared and re-colored by
exhaustive search (``extend_partial``).  Only when that also fails is
:class:`ExtensionFailure` raised.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .coloring import (
    Coloring,
    ColoringError,
    first_free,
    recolor_two_neighbor,
    verify_odd_coloring,
    witness,
)
from .graph import (
    AbstractGraph,
    EmbeddedGraph,
    FaceSet,
    GraphError,
    delete_vertices,
    has_adjacent_triangles,
    is_convenient,
    is_four_one_face,
    special_labelings,
    subdivide_edge,
    surviving_ids,
    trace_faces,
    two_neighbor_count,
)
from .solver import ImproperPartialError, extend_partial, find_odd_coloring

log = logging.getLogger(__name__)

PALETTE = 8

THREE_VERTEX = "ThreeVertex"
ADJACENT_TWO_VERTICES = "AdjacentTwoVertices"
ADJACENT_CONVENIENT = "AdjacentConvenient"
OVERLOADED_K_VERTEX = "OverloadedKVertex"
THREE_FACE_WITH_TWO_VERTEX = "ThreeFaceWithTwoVertex"
FOUR_FACE_TWO_TWO_VERTICES = "FourFaceTwoTwoVertices"
FIVE_FACE_TWO_TWO_VERTICES = "FiveFaceTwoTwoVertices"
ADJACENT_FOUR_VERTICES = "AdjacentFourVertices"
THREE_FACE_BAD_INCIDENCE = "ThreeFaceBadIncidence"
SPECIAL_SIX_NEIGHBOR = "SpecialSixNeighbor"
FIVE_PATH = "FivePath"

TAGS = (
    THREE_VERTEX,
    ADJACENT_TWO_VERTICES,
    ADJACENT_CONVENIENT,
    OVERLOADED_K_VERTEX,
    THREE_FACE_WITH_TWO_VERTEX,
    FOUR_FACE_TWO_TWO_VERTICES,
    FIVE_FACE_TWO_TWO_VERTICES,
    ADJACENT_FOUR_VERTICES,
    THREE_FACE_BAD_INCIDENCE,
    SPECIAL_SIX_NEIGHBOR,
    FIVE_PATH,
)
FACE_TAGS = frozenset(
    {
        THREE_FACE_WITH_TWO_VERTEX,
        FOUR_FACE_TWO_TWO_VERTICES,
        FIVE_FACE_TWO_TWO_VERTICES,
        THREE_FACE_BAD_INCIDENCE,
        SPECIAL_SIX_NEIGHBOR,
        FIVE_PATH,
    }
)
# reduced through the configuration their own argument exhibits
DERIVED_TAGS = frozenset({FIVE_FACE_TWO_TWO_VERTICES, THREE_FACE_BAD_INCIDENCE})


class ReductionError(GraphError):
    pass


class ConfigurationNotPresentError(ReductionError):
    pass


class MeasureError(ReductionError):
    pass


class HypothesisError(ReductionError):
    pass


class ExtensionFailure(RuntimeError):
    """No odd 8-coloring found by the recipe nor by the local exhaustive search."""

    def __init__(self, cfg: "Configuration", reduced_coloring: Coloring, attempted: Coloring | None):
        super().__init__(f"cannot extend coloring across {cfg.tag} {cfg.actors}")
        self.configuration = cfg
        self.reduced_coloring = reduced_coloring
        self.attempted = attempted


class FallbackExhausted(RuntimeError):
    """The exact solver found no odd 8-coloring: a counterexample certificate."""

    def __init__(self, graph: AbstractGraph):
        super().__init__(f"no odd {PALETTE}-coloring exists for {graph!r}")
        self.graph = graph


@dataclass(frozen=True)
class Configuration:
    tag: str
    actors: tuple[int, ...]
    faces: tuple[int, ...] = ()
    side: str = ""

    def to_json(self) -> dict:
        out = {"tag": self.tag, "actors": list(self.actors)}
        if self.faces:
            out["faces"] = list(self.faces)
        if self.side:
            out["side"] = self.side
        return out


class Measure(NamedTuple):
    four_plus_vertices: int
    four_plus_adjacencies: int
    edge_count: int

    def to_json(self) -> list[int]:
        return list(self)


def measure(g: AbstractGraph) -> Measure:
    deg = g.degrees()
    return Measure(
        sum(1 for d in deg if d >= 4),
        sum(1 for u, v in g.edges() if deg[u] >= 4 and deg[v] >= 4),
        g.edge_count,
    )


@dataclass
class ReducedInstance:
    reduced: AbstractGraph
    vertex_map: dict[int, int]
    measure_before: Measure
    measure_after: Measure
    embedding_preserved: bool
    configuration: Configuration
    normalized: Configuration

    def to_json(self) -> dict:
        return {
            "tag": self.configuration.tag,
            "actors": list(self.configuration.actors),
            "measureBefore": self.measure_before.to_json(),
            "measureAfter": self.measure_after.to_json(),
        }


# --------------------------------------------------------------------------
# detection


def _other(g: AbstractGraph, two_vertex: int, known: int) -> int:
    (z,) = g.adj[two_vertex] - {known}
    return z


def _is_k_i(g: AbstractGraph, v: int, k: int, i: int) -> bool:
    return g.degree(v) == k and two_neighbor_count(g, v) == i


def _walk_from(fs: FaceSet, f: int, start: int) -> tuple[int, ...]:
    walk = fs.faces[f]
    return walk[start:] + walk[:start]


def _three_vertex(g, fs):
    for v in range(g.n):
        if g.degree(v) == 3:
            yield Configuration(THREE_VERTEX, (v, *g.neighbors(v)))


def _adjacent_two(g, fs):
    for u, v in g.edges():
        if g.degree(u) == 2 and g.degree(v) == 2:
            yield Configuration(ADJACENT_TWO_VERTICES, (u, v))


def _adjacent_convenient(g, fs):
    conv = [is_convenient(g, v) for v in range(g.n)]
    for u, v in g.edges():
        if conv[u] and conv[v]:
            yield Configuration(ADJACENT_CONVENIENT, (u, v))


def overload_count(g: AbstractGraph, v: int) -> int:
    return sum(1 for u in g.adj[v] if g.degree(u) == 2 or is_convenient(g, u))


def _overloaded(g, fs):
    for v in range(g.n):
        k = g.degree(v)
        if 4 <= k <= 7 and overload_count(g, v) >= 2 * k - 7:
            yield Configuration(OVERLOADED_K_VERTEX, (v,))


def _three_face_two_vertex(g, fs):
    for f, walk in enumerate(fs.faces):
        if len(walk) != 3:
            continue
        twos = sorted(x for x in walk if g.degree(x) == 2)
        if twos:
            w = twos[0]
            u, v = sorted(x for x in walk if x != w)
            yield Configuration(THREE_FACE_WITH_TWO_VERTEX, (u, v, w), (f,))


def _opposite_twos(g, fs, size, tag):
    for f, walk in enumerate(fs.faces):
        if len(walk) != size:
            continue
        best = None
        for s in range(size):
            rot = _walk_from(fs, f, s)
            if g.degree(rot[0]) == 2 and g.degree(rot[2]) == 2 and rot[0] != rot[2]:
                if best is None or rot < best:
                    best = rot
        if best is not None:
            yield Configuration(tag, best, (f,))


def _four_face(g, fs):
    return _opposite_twos(g, fs, 4, FOUR_FACE_TWO_TWO_VERTICES)


def _five_face(g, fs):
    return _opposite_twos(g, fs, 5, FIVE_FACE_TWO_TWO_VERTICES)


def _adjacent_four(g, fs):
    for u, v in g.edges():
        if g.degree(u) == 4 and g.degree(v) == 4:
            yield Configuration(ADJACENT_FOUR_VERTICES, (u, v))


def non_convenient_six_plus(g: AbstractGraph, v: int) -> bool:
    return g.degree(v) >= 6 and not is_convenient(g, v)


def _three_face_bad(g, fs):
    for f, walk in enumerate(fs.faces):
        if len(walk) != 3:
            continue
        if sum(1 for x in set(walk) if non_convenient_six_plus(g, x)) < 2:
            yield Configuration(THREE_FACE_BAD_INCIDENCE, tuple(sorted(walk)), (f,))


def lemma6_target(g: AbstractGraph, x: int) -> bool:
    return _is_k_i(g, x, 5, 2) or _is_k_i(g, x, 6, 4)


def _special_six(g, fs):
    for v in range(g.n):
        found = []
        for lab in special_labelings(g, fs, v):
            # lab[0] / lab[5]: the v_1 / v_6 positions; v_4 / v_5 are their mirror images
            if lemma6_target(g, lab[0]):
                found.append(Configuration(SPECIAL_SIX_NEIGHBOR, (v, *lab, lab[0]), side="v1"))
            if lemma6_target(g, lab[5]):
                found.append(Configuration(SPECIAL_SIX_NEIGHBOR, (v, *lab, lab[5]), side="v6"))
        yield from sorted(found, key=lambda c: c.actors)


def _five_path(g, fs):
    for v in range(g.n):
        if g.degree(v) != 2:
            continue
        u, w = g.neighbors(v)
        if not (_is_k_i(g, u, 5, 2) and _is_k_i(g, w, 5, 2)):
            continue
        f1, f2 = fs.face_of[(u, v)], fs.face_of[(w, v)]
        if not (is_four_one_face(g, fs, f1) and is_four_one_face(g, fs, f2)):
            continue
        x = _walk_from(fs, f1, fs.faces[f1].index(u))[3]
        y = _walk_from(fs, f2, fs.faces[f2].index(w))[3]
        yield Configuration(FIVE_PATH, (u, v, w, x, y), (f1, f2))


_FINDERS = {
    THREE_VERTEX: _three_vertex,
    ADJACENT_TWO_VERTICES: _adjacent_two,
    ADJACENT_CONVENIENT: _adjacent_convenient,
    OVERLOADED_K_VERTEX: _overloaded,
    THREE_FACE_WITH_TWO_VERTEX: _three_face_two_vertex,
    FOUR_FACE_TWO_TWO_VERTICES: _four_face,
    FIVE_FACE_TWO_TWO_VERTICES: _five_face,
    ADJACENT_FOUR_VERTICES: _adjacent_four,
    THREE_FACE_BAD_INCIDENCE: _three_face_bad,
    SPECIAL_SIX_NEIGHBOR: _special_six,
    FIVE_PATH: _five_path,
}


def _faces_for(g: AbstractGraph, fs: FaceSet | None) -> FaceSet | None:
    if fs is None and isinstance(g, EmbeddedGraph):
        return trace_faces(g)
    return fs


def configurations_of(g: AbstractGraph, tag: str, fs: FaceSet | None = None) -> list[Configuration]:
    """Every occurrence of ``tag``, sorted by actor ids."""
    if tag in FACE_TAGS:
        fs = _faces_for(g, fs)
        if fs is None:
            return []
    return sorted(_FINDERS[tag](g, fs), key=lambda c: c.actors)


def find_all_configurations(g: AbstractGraph, fs: FaceSet | None = None) -> list[Configuration]:
    fs = _faces_for(g, fs)
    return [cfg for tag in TAGS for cfg in configurations_of(g, tag, fs)]


def find_configuration(
    g: AbstractGraph, fs: FaceSet | None = None, only: str | Iterable[str] | None = None
) -> Configuration | None:
    """First configuration in priority order, lowest actors first.

    ``only`` restricts the scan to the given tag(s), still in priority order.
    """
    fs = _faces_for(g, fs)
    wanted = TAGS if only is None else ((only,) if isinstance(only, str) else tuple(only))
    for tag in TAGS:
        if tag not in wanted:
            continue
        found = configurations_of(g, tag, fs)
        if found:
            return found[0]
    return None


# --------------------------------------------------------------------------
# reduction


_PRIMITIVE_CORE = {
    THREE_VERTEX: lambda cfg: cfg.actors[:1],
    ADJACENT_TWO_VERTICES: lambda cfg: cfg.actors,
    ADJACENT_CONVENIENT: lambda cfg: cfg.actors,
    OVERLOADED_K_VERTEX: lambda cfg: cfg.actors,
    ADJACENT_FOUR_VERTICES: lambda cfg: cfg.actors,
}


def normalize(g: AbstractGraph, cfg: Configuration) -> Configuration:
    """Map a derived configuration onto the primitive one its face exhibits."""
    if cfg.tag not in DERIVED_TAGS:
        return cfg
    on_face = set(cfg.actors)
    for tag in TAGS:
        if tag == THREE_FACE_WITH_TWO_VERTEX and cfg.tag == THREE_FACE_BAD_INCIDENCE:
            twos = sorted(x for x in on_face if g.degree(x) == 2)
            if twos:
                u, v = sorted(on_face - {twos[0]})
                return Configuration(THREE_FACE_WITH_TWO_VERTEX, (u, v, twos[0]), cfg.faces)
        if tag not in _PRIMITIVE_CORE:
            continue
        for prim in configurations_of(g, tag):
            if set(_PRIMITIVE_CORE[tag](prim)) <= on_face:
                return prim
    raise ReductionError(f"{cfg.tag} at {cfg.actors} exhibits no primitive configuration")


def _present(g: AbstractGraph, cfg: Configuration) -> bool:
    return cfg in configurations_of(g, cfg.tag)


def _lemma5_pairs(g: AbstractGraph, u: int, v: int) -> list[tuple[int, int]]:
    us = sorted(g.adj[u] - {v})
    vs = sorted(g.adj[v] - {u})
    return [
        (us[0], us[1]), (us[1], us[2]), (us[2], us[0]),
        (vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0]),
    ]  # fmt: skip


def _build(g: AbstractGraph, cfg: Configuration) -> tuple[AbstractGraph, dict[int, int], bool]:
    """Reduced graph, old->new ids of surviving vertices, embedding preserved."""
    tag, a = cfg.tag, cfg.actors
    identity = {x: x for x in range(g.n)}
    embedded = isinstance(g, EmbeddedGraph)
    if tag in (THREE_VERTEX, OVERLOADED_K_VERTEX):
        removed = {a[0]}
    elif tag == ADJACENT_TWO_VERTICES:
        removed = {a[1]}
    elif tag == THREE_FACE_WITH_TWO_VERTEX:
        removed = {a[2]}
    elif tag == FOUR_FACE_TWO_TWO_VERTICES:
        removed = {a[0]}
    elif tag == ADJACENT_CONVENIENT:
        return subdivide_edge(g, a[0], a[1]), identity, embedded
    elif tag == SPECIAL_SIX_NEIGHBOR:
        return subdivide_edge(g, a[0], a[7]), identity, embedded
    elif tag == FIVE_PATH:
        return subdivide_edge(g, a[3], a[2]), identity, embedded
    elif tag == ADJACENT_FOUR_VERTICES:
        u, v = a
        pairs = _lemma5_pairs(g, u, v)
        base = delete_vertices(g.to_abstract(), [u, v])
        ids = surviving_ids(g.n, {u, v})
        rows = [set(r) for r in base.adj]
        for p, q in pairs:
            p, q = ids[p], ids[q]
            # connect p q if needed, then split the edge with a new 2-vertex
            rows[p].discard(q)
            rows[q].discard(p)
            x = len(rows)
            rows.append({p, q})
            rows[p].add(x)
            rows[q].add(x)
        return AbstractGraph(len(rows), rows), ids, False
    else:
        raise ReductionError(f"no reduction for tag {tag}")
    return delete_vertices(g, removed), surviving_ids(g.n, removed), embedded


def reduce(g: AbstractGraph, cfg: Configuration) -> ReducedInstance:
    if not _present(g, cfg):
        raise ConfigurationNotPresentError(f"{cfg.tag} {cfg.actors} not present")
    prim = normalize(g, cfg)
    reduced, vmap, preserved = _build(g, prim)
    before, after = measure(g), measure(reduced)
    if not after < before:
        raise MeasureError(f"{prim.tag} does not decrease the measure: {before} -> {after}")
    return ReducedInstance(reduced, vmap, before, after, preserved, cfg, prim)


# --------------------------------------------------------------------------
# extension


@dataclass
class Extension:
    coloring: Coloring
    recipe_ok: bool
    configuration: Configuration


class _Work:
    """Mutable coloring of the original graph used while running a recipe."""

    def __init__(self, g: AbstractGraph, colors: list[int]):
        self.g = g
        self.c = colors

    def frozen(self) -> Coloring:
        return Coloring(PALETTE, tuple(self.c))

    def w(self, z: int, ignore: Iterable[int] = ()) -> int | None:
        return witness(self.g, self.frozen(), z, ignore)

    def valid(self) -> bool:
        return all(self.c) and verify_odd_coloring(self.g, self.frozen(), PALETTE).valid

    def set(self, v: int, avoid: Iterable[int | None]) -> bool:
        col = first_free(avoid, PALETTE)
        if col is None:
            return False
        self.c[v] = col
        return True

    def lemma2(self, v: int) -> bool:
        try:
            self.c = list(recolor_two_neighbor(self.g, self.frozen(), v, PALETTE).colors)
        except ColoringError:
            return False
        return True


def _two_neighbors(g: AbstractGraph, v: int) -> list[int]:
    return sorted(u for u in g.adj[v] if g.degree(u) == 2)


def _lemma2_vertex(g: AbstractGraph, v: int) -> list[int]:
    if is_convenient(g, v) and g.degree(v) % 2 == 0:
        return _two_neighbors(g, v)[:1]
    return []


def _recipe(g: AbstractGraph, cfg: Configuration, work: _Work) -> bool:
    """Run the configuration's recoloring recipe in place; False when it gets stuck."""
    tag, a = cfg.tag, cfg.actors
    c = work.c
    if tag == THREE_VERTEX:
        v = a[0]
        nbrs = a[1:]
        return work.set(v, [c[x] for x in nbrs] + [work.w(x) for x in nbrs])
    if tag == ADJACENT_TWO_VERTICES:
        u, v = a
        up, vp = _other(g, u, v), _other(g, v, u)
        return work.set(v, [c[u], c[vp], work.w(vp), c[up]])
    if tag == ADJACENT_CONVENIENT:
        u, v = a
        return work.lemma2(u) and work.lemma2(v)
    if tag == OVERLOADED_K_VERTEX:
        (v,) = a
        avoid: list[int | None] = []
        for z in sorted(g.adj[v]):
            if g.degree(z) == 2:
                avoid.append(c[_other(g, z, v)])
            elif is_convenient(g, z):
                avoid.append(c[z])
            else:
                avoid += [c[z], work.w(z)]
        if not work.set(v, avoid):
            return False
        for z in _two_neighbors(g, v):
            if not work.set(z, [c[v], c[_other(g, z, v)]]):
                return False
        for z in sorted(g.adj[v]):
            if g.degree(z) != 2 and is_convenient(g, z) and not work.lemma2(z):
                return False
        return True
    if tag == THREE_FACE_WITH_TWO_VERTEX:
        u, v, w = a
        return work.set(w, [c[u], work.w(u), c[v], work.w(v)])
    if tag == FOUR_FACE_TWO_TWO_VERTICES:
        v1, v2, _, v4 = a
        return work.set(v1, [c[v2], c[v4], work.w(v2), work.w(v4)])
    if tag == ADJACENT_FOUR_VERTICES:
        u, v = a
        us = sorted(g.adj[u] - {v})
        vs = sorted(g.adj[v] - {u})
        if not work.set(u, [c[x] for x in us] + [work.w(x) for x in us]):
            return False
        return work.set(v, [c[x] for x in vs] + [work.w(x) for x in vs] + [c[u]])
    if tag == SPECIAL_SIX_NEIGHBOR:
        return _recipe_special(g, cfg, work)
    if tag == FIVE_PATH:
        return _recipe_five_path(g, cfg, work)
    raise ReductionError(f"no recipe for tag {tag}")


def _common_two_vertex(g: AbstractGraph, a: int, b: int) -> int | None:
    common = sorted(z for z in g.adj[a] & g.adj[b] if g.degree(z) == 2)
    return common[0] if common else None


def _recipe_special(g: AbstractGraph, cfg: Configuration, work: _Work) -> bool:
    v, v1, v2, v3, v4, v5, v6, t = cfg.actors
    c = work.c
    if not work.lemma2(t):
        return False
    if work.valid():
        return True
    old_t, old_v = c[t], c[v]
    if cfg.side == "v1":
        w = _common_two_vertex(g, v1, v6)
        others = sorted(g.adj[t] - {v, v2, w})
        avoid = [c[v6], c[v], c[v2], old_t]
        for o in others:
            if g.degree(o) != 2:
                avoid.append(c[o])
            avoid.append(work.w(o, ignore=(t,)))
        if not work.set(t, avoid):
            return False
        if work.valid():
            return True
        return work.set(v, [old_v, *(c[z] for z in g.adj[v]), work.w(v3, ignore=(v,))])
    b = _common_two_vertex(g, v5, v6)
    cc = _common_two_vertex(g, v6, v1)
    others = sorted(g.adj[t] - {v, b, cc})
    c[t] = c[v] = 0
    avoid = [c[v1], c[v5], work.w(v, ignore=(t,))]
    if g.degree(t) == 5:
        avoid.append(old_t)
    for o in others:
        if g.degree(o) != 2:
            avoid.append(c[o])
        avoid.append(work.w(o, ignore=(t,)))
    if not work.set(t, avoid):
        return False
    return work.set(
        v,
        [old_v, *(c[z] for z in g.adj[v]), work.w(v2, ignore=(v,)), work.w(v3, ignore=(v,))],
    )


def _five_path_roles(g: AbstractGraph, s: int, v: int, x: int, y: int) -> tuple[int | None, int | None]:
    """The other 2-neighbour and the remaining neighbour of a 5_2 path end ``s``."""
    twos = [z for z in _two_neighbors(g, s) if z != v]
    rest = sorted(g.adj[s] - {v, x, y, *twos})
    return (twos[0] if twos else None), (rest[0] if rest else None)


def _recipe_five_path(g: AbstractGraph, cfg: Configuration, work: _Work) -> bool:
    u, v, w, x, y = cfg.actors
    c = work.c
    if work.valid():
        return True
    wp, wpp = _five_path_roles(g, w, v, x, y)
    old_w, old_u = c[w], c[u]
    avoid = [c[x], c[u], old_w, c[y]]
    if wp is not None:
        avoid.append(c[wp])
    if wpp is not None:
        avoid += [c[wpp], work.w(wpp, ignore=(w,))]
    if not work.set(w, avoid):
        return False
    if work.valid():
        return True
    up, upp = _five_path_roles(g, u, v, x, y)
    avoid = [c[x], c[w], old_u, c[y]]
    if up is not None:
        avoid.append(c[up])
    if upp is not None:
        avoid += [c[upp], work.w(upp, ignore=(u,))]
    return work.set(u, avoid)


def modified_set(g: AbstractGraph, cfg: Configuration) -> set[int]:
    """Vertices the recipe may recolor; the fallback search ranges over these."""
    tag, a = cfg.tag, cfg.actors
    if tag == THREE_VERTEX:
        return {a[0]}
    if tag == ADJACENT_TWO_VERTICES:
        return {a[0], a[1]}
    if tag == ADJACENT_CONVENIENT:
        return set(_lemma2_vertex(g, a[0]) + _lemma2_vertex(g, a[1]))
    if tag == OVERLOADED_K_VERTEX:
        v = a[0]
        out = {v, *_two_neighbors(g, v)}
        for z in g.adj[v]:
            if g.degree(z) != 2:
                out.update(_lemma2_vertex(g, z))
        return out
    if tag == THREE_FACE_WITH_TWO_VERTEX:
        return {a[2]}
    if tag == FOUR_FACE_TWO_TWO_VERTICES:
        return {a[0]}
    if tag == ADJACENT_FOUR_VERTICES:
        return set(a)
    if tag == SPECIAL_SIX_NEIGHBOR:
        v, t = a[0], a[7]
        return {v, t, *_two_neighbors(g, t)}
    if tag == FIVE_PATH:
        u, v, w, x, y = a
        out = {u, v, w}
        for s in (u, w):
            out.update(_two_neighbors(g, s))
        return out
    raise ReductionError(f"no modified set for tag {tag}")


def lift(g: AbstractGraph, cfg: Configuration, reduced_coloring: Coloring) -> list[int]:
    """Copy colors of surviving vertices back to ``g``; removed vertices stay 0."""
    _, vmap, _ = _build(g, cfg)
    colors = [0] * g.n
    for old, new in vmap.items():
        colors[old] = reduced_coloring[new]
    return colors


# The search frees the recipe's vertices first, then grows that region by
# whole neighbourhoods; an even-degree overloaded vertex can need this.
FALLBACK_RADIUS = 2


def extend_with_report(g: AbstractGraph, cfg: Configuration, reduced_coloring: Coloring) -> Extension:
    prim = normalize(g, cfg)
    base = lift(g, prim, reduced_coloring)
    work = _Work(g, list(base))
    recipe_done = _recipe(g, prim, work)
    if recipe_done and work.valid():
        return Extension(work.frozen(), True, prim)
    attempted = work.frozen() if all(0 <= x <= PALETTE for x in work.c) else None
    log.debug("recipe for %s %s failed; falling back to local search", prim.tag, prim.actors)
    region = modified_set(g, prim) | {x for x in range(g.n) if base[x] == 0}
    for _ in range(FALLBACK_RADIUS + 1):
        cleared = [0 if x in region else base[x] for x in range(g.n)]
        try:
            found = extend_partial(g, Coloring(PALETTE, tuple(cleared)), PALETTE)
        except ImproperPartialError:
            break  # the reduced coloring was not proper to begin with
        if found is not None:
            return Extension(found, False, prim)
        region = region | {y for x in region for y in g.adj[x]}
    raise ExtensionFailure(cfg, reduced_coloring, attempted)


def extend(g: AbstractGraph, cfg: Configuration, reduced_coloring: Coloring) -> Coloring:
    return extend_with_report(g, cfg, reduced_coloring).coloring


# --------------------------------------------------------------------------
# driver


@dataclass
class DriverResult:
    coloring: Coloring
    trace: list[dict] = field(default_factory=list)
    extension_fallbacks: int = 0
    solver_fallbacks: int = 0

    def to_json(self) -> dict:
        return {
            "coloring": list(self.coloring.colors),
            "trace": self.trace,
            "fallbacksUsed": {
                "extensionSearch": self.extension_fallbacks,
                "exactSolver": self.solver_fallbacks,
            },
        }


def embedding_genus(g: EmbeddedGraph, fs: FaceSet | None = None) -> int:
    """Genus of the rotation system, summed over connected components."""
    fs = fs if fs is not None else trace_faces(g)
    comp = [-1] * g.n
    ncomp = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        stack = [s]
        comp[s] = ncomp
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if comp[y] < 0:
                    comp[y] = ncomp
                    stack.append(y)
        ncomp += 1
    faces = [0] * ncomp
    for walk in fs.faces:
        faces[comp[walk[0]]] += 1
    verts = [0] * ncomp
    edges = [0] * ncomp
    for x in range(g.n):
        verts[comp[x]] += 1
        edges[comp[x]] += g.degree(x)
    twice = 0
    for i in range(ncomp):
        e = edges[i] // 2
        twice += 2 - verts[i] + e - (faces[i] if e else 1)
    return twice // 2


def check_hypotheses(g: EmbeddedGraph) -> None:
    if has_adjacent_triangles(g):
        raise HypothesisError("graph has adjacent triangles")
    genus = embedding_genus(g)
    if genus > 1:
        raise HypothesisError(f"embedding has genus {genus} > 1")


def color_without_adjacent_triangles(g: EmbeddedGraph) -> DriverResult:
    """Odd 8-coloring by repeated reduction, falling back to exact search."""
    check_hypotheses(g)
    result = DriverResult(Coloring.empty(0, PALETTE))
    budget = [4 * g.n]

    def solve_exact(h: AbstractGraph) -> Coloring:
        result.solver_fallbacks += 1
        found, _ = find_odd_coloring(h, PALETTE)
        if found is None:
            raise FallbackExhausted(h)
        return found

    def step(h: AbstractGraph) -> Coloring:
        if not isinstance(h, EmbeddedGraph) or budget[0] <= 0:
            return solve_exact(h)
        cfg = find_configuration(h)
        if cfg is None:
            return solve_exact(h)
        budget[0] -= 1
        inst = reduce(h, cfg)
        result.trace.append(inst.to_json())
        sub = step(inst.reduced) if inst.embedding_preserved else solve_exact(inst.reduced)
        ext = extend_with_report(h, cfg, sub)
        if not ext.recipe_ok:
            result.extension_fallbacks += 1
        return ext.coloring

    coloring = step(g) if g.n else Coloring.empty(0, PALETTE)
    cert = verify_odd_coloring(g, coloring, PALETTE)
    if not cert.valid:
        raise RuntimeError(f"driver produced an invalid coloring: {cert.violations[:3]}")
    result.coloring = coloring
    return result
