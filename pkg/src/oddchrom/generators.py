"""Seeded graph generators: canonical embeddings, random toroidal instances, planted configurations.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
``GenSpec`` fully determines the output.  Gadgets for the face-based configurations
live as rotation files in ``oddchrom/gadgets`` and are rebuilt by
``scripts/build_gadgets.py``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .formats import format_graph, parse_rotation_system
from .graph import (
    AbstractGraph,
    EmbeddedGraph,
    GraphError,
    euler_genus,
    has_adjacent_triangles,
    subdivide_edge,
    trace_faces,
)
from . import reduction as R

PRNG_NAME = "numpy PCG64 (default_rng)"
MAX_PLANT_VERTICES = 20
_RETRIES = 64

KINDS = ("k7-torus", "torus-grid", "cycle", "complete", "random-toroidal", "plant")

PLANT_NAMES = {
    "three-vertex": R.THREE_VERTEX,
    "adjacent-two-vertices": R.ADJACENT_TWO_VERTICES,
    "adjacent-convenient": R.ADJACENT_CONVENIENT,
    "overloaded-k-vertex": R.OVERLOADED_K_VERTEX,
    "three-face-with-two-vertex": R.THREE_FACE_WITH_TWO_VERTEX,
    "four-face-two-two-vertices": R.FOUR_FACE_TWO_TWO_VERTICES,
    "five-face-two-two-vertices": R.FIVE_FACE_TWO_TWO_VERTICES,
    "adjacent-four-vertices": R.ADJACENT_FOUR_VERTICES,
    "three-face-bad-incidence": R.THREE_FACE_BAD_INCIDENCE,
    "special-six-neighbor": R.SPECIAL_SIX_NEIGHBOR,
    "five-path": R.FIVE_PATH,
}
TAG_TO_PLANT = {tag: name for name, tag in PLANT_NAMES.items()}

# Under the fixed priority order these tags are always preceded by another
# configuration on the same vertices, so plants are checked with ``only=tag``.
SHADOWED_TAGS = frozenset(
    {R.THREE_FACE_WITH_TWO_VERTEX, R.FIVE_FACE_TWO_TWO_VERTICES, R.THREE_FACE_BAD_INCIDENCE}
)


class GeneratorError(ValueError):
    pass


class PlantInfeasibleError(GeneratorError):
    pass


@dataclass(frozen=True)
class GenSpec:
    kind: str
    params: tuple = ()
    seed: int = 0

    def header(self) -> list[str]:
        args = " ".join(str(p) for p in self.params)
        return [f"gen {self.kind} {args}".rstrip() + f" seed={self.seed}", f"prng {PRNG_NAME}"]


# --------------------------------------------------------------------------
# canonical embeddings


def k7_torus() -> EmbeddedGraph:
    offsets = (1, 3, 2, 6, 4, 5)
    return EmbeddedGraph([[(i + d) % 7 for d in offsets] for i in range(7)])


def torus_grid(m: int, n: int) -> EmbeddedGraph:
    """C_m x C_n quadrangulation of the torus; vertex ``(i, j)`` is ``i * n + j``."""
    if m < 3 or n < 3:
        raise GeneratorError(f"torus grid needs m, n >= 3, got {m}, {n}")

    def vid(i, j):
        return (i % m) * n + (j % n)

    return EmbeddedGraph(
        [
            [vid(i, j + 1), vid(i + 1, j), vid(i, j - 1), vid(i - 1, j)]
            for i in range(m)
            for j in range(n)
        ]
    )


def cycle(n: int) -> EmbeddedGraph:
    if n < 3:
        raise GeneratorError(f"cycle needs n >= 3, got {n}")
    return EmbeddedGraph([[(i - 1) % n, (i + 1) % n] for i in range(n)])


def complete(n: int) -> AbstractGraph:
    if n < 1:
        raise GeneratorError(f"complete graph needs n >= 1, got {n}")
    return AbstractGraph(n, [[u for u in range(n) if u != v] for v in range(n)])


# --------------------------------------------------------------------------
# local embedding edits


def insert_chord(g: EmbeddedGraph, f_walk: tuple[int, ...], i: int, j: int) -> EmbeddedGraph:
    """Join the corners at positions ``i`` and ``j`` of a face walk through its interior."""
    a, b = f_walk[i], f_walk[j]
    pa, pb = f_walk[i - 1], f_walk[j - 1]
    rots = [list(r) for r in g.rotations]
    # the walk enters a from pa and leaves along succ_a(pa): the chord goes in between
    rots[a].insert(rots[a].index(pa) + 1, b)
    rots[b].insert(rots[b].index(pb) + 1, a)
    return EmbeddedGraph(rots)


def delete_edge(g: EmbeddedGraph, u: int, v: int) -> EmbeddedGraph:
    rots = [list(r) for r in g.rotations]
    rots[u].remove(v)
    rots[v].remove(u)
    return EmbeddedGraph(rots)


def _relabel(g: EmbeddedGraph, rng: np.random.Generator) -> EmbeddedGraph:
    return g.relabel([int(x) for x in rng.permutation(g.n)])


def random_toroidal(n: int, seed: int) -> EmbeddedGraph:
    """Connected embedded graph on ``n`` vertices, genus <= 1, no adjacent triangles."""
    if n < 1:
        raise GeneratorError(f"random toroidal graph needs n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    for _ in range(_RETRIES):
        g = _random_toroidal_attempt(n, rng)
        if g is not None:
            return g
    raise GeneratorError(f"no instance after {_RETRIES} attempts for n={n}, seed={seed}")


def _random_toroidal_attempt(n: int, rng: np.random.Generator) -> EmbeddedGraph | None:
    if n == 1:
        return EmbeddedGraph([[]])
    if n == 2:
        return EmbeddedGraph([[1], [0]])
    if n >= 9:
        dims = [(a, b) for a in range(3, n + 1) for b in range(3, n + 1) if a * b <= n]
        a, b = dims[int(rng.integers(len(dims)))]
        g = torus_grid(a, b)
    else:
        g = cycle(3)
    while g.n < n:
        edges = g.edges()
        u, v = edges[int(rng.integers(len(edges)))]
        g = subdivide_edge(g, u, v)
    for _ in range(int(rng.integers(n, 3 * n + 1))):
        if rng.random() < 0.7:
            g = _try_chord(g, rng)
        else:
            g = _try_delete(g, rng)
    g = _relabel(g, rng)
    if has_adjacent_triangles(g) or not g.is_connected() or euler_genus(g) > 1:
        return None
    return g


def _try_chord(g: EmbeddedGraph, rng: np.random.Generator) -> EmbeddedGraph:
    fs = trace_faces(g)
    f = int(rng.integers(len(fs.faces)))
    walk = fs.faces[f]
    if len(walk) < 4:
        return g
    i, j = sorted(int(x) for x in rng.choice(len(walk), size=2, replace=False))
    a, b = walk[i], walk[j]
    if a == b or g.has_edge(a, b):
        return g
    h = insert_chord(g, walk, i, j)
    return g if has_adjacent_triangles(h) else h


def _try_delete(g: EmbeddedGraph, rng: np.random.Generator) -> EmbeddedGraph:
    fs = trace_faces(g)
    edges = g.edges()
    u, v = edges[int(rng.integers(len(edges)))]
    if fs.face_of[(u, v)] == fs.face_of[(v, u)]:
        return g
    if g.degree(u) <= 1 or g.degree(v) <= 1:
        return g
    h = delete_edge(g, u, v)
    return h if h.is_connected() else g


# --------------------------------------------------------------------------
# plants


def _grid_edit(tag: str, rng: np.random.Generator) -> EmbeddedGraph:
    m, n = (3, 4) if rng.random() < 0.5 else (4, 4)
    g = torus_grid(m, n)
    i, j = int(rng.integers(m)), int(rng.integers(n))
    x = i * n + j
    east = i * n + (j + 1) % n
    south = ((i + 1) % m) * n + j
    corner = ((i + 1) % m) * n + (j + 1) % n
    if tag == R.THREE_VERTEX:
        return delete_edge(g, x, east)
    if tag == R.ADJACENT_TWO_VERTICES:
        g = subdivide_edge(g, x, east)
        return subdivide_edge(g, g.n - 1, east)
    if tag == R.ADJACENT_CONVENIENT:
        g = subdivide_edge(g, x, east)
        return subdivide_edge(g, south, corner)
    if tag == R.OVERLOADED_K_VERTEX:
        return subdivide_edge(g, x, east)
    if tag == R.ADJACENT_FOUR_VERTICES:
        return g
    fs = trace_faces(g)
    if tag == R.THREE_FACE_WITH_TWO_VERTEX:
        w = g.n
        rots = [list(r) for r in g.rotations]
        rots[east].insert(rots[east].index(x) + 1, w)
        rots[x].insert(rots[x].index(east), w)
        rots.append([x, east])
        return EmbeddedGraph(rots)
    walk = fs.faces[fs.face_of[(x, east)]]
    s = walk.index(x)
    walk = walk[s:] + walk[:s]  # (a, b, c, d) with a = x, b = east
    if tag == R.FIVE_FACE_TWO_TWO_VERTICES:
        g = _insert_two_vertex_chord(g, walk, 1, 3)
        return subdivide_edge(g, walk[0], walk[1])
    if tag == R.THREE_FACE_BAD_INCIDENCE:
        g = insert_chord(g, walk, 0, 2)
        return subdivide_edge(g, walk[2], walk[3])
    raise PlantInfeasibleError(f"no grid plant for {tag}")


def _insert_two_vertex_chord(g: EmbeddedGraph, walk: tuple[int, ...], i: int, j: int) -> EmbeddedGraph:
    g = insert_chord(g, walk, i, j)
    return subdivide_edge(g, walk[i], walk[j])


_GADGET_FILES = {
    R.FOUR_FACE_TWO_TWO_VERTICES: ("four_face_two_two_vertices.rot",),
    R.SPECIAL_SIX_NEIGHBOR: ("special_six_v6_side.rot", "special_six_v1_side.rot"),
    R.FIVE_PATH: ("five_path.rot",),
}


def load_gadget(name: str) -> EmbeddedGraph:
    text = resources.files("oddchrom.gadgets").joinpath(name).read_text()
    return parse_rotation_system(text)


def plant_found(g: EmbeddedGraph, tag: str) -> R.Configuration | None:
    """The configuration the plant is meant to exhibit, as the finder reports it."""
    only = tag if tag in SHADOWED_TAGS else None
    return R.find_configuration(g, only=only)


def plant(tag: str, seed: int) -> EmbeddedGraph:
    if tag not in R.TAGS:
        raise GeneratorError(f"unknown configuration tag {tag!r}")
    rng = np.random.default_rng(seed)
    if tag in _GADGET_FILES:
        names = _GADGET_FILES[tag]
        g = load_gadget(names[int(rng.integers(len(names)))])
    else:
        g = _grid_edit(tag, rng)
    g = _relabel(g, rng)
    found = plant_found(g, tag)
    if found is None or found.tag != tag or g.n > MAX_PLANT_VERTICES:
        raise PlantInfeasibleError(f"plant for {tag} produced {found}")
    return g


# --------------------------------------------------------------------------
# gadget construction (used by scripts/build_gadgets.py)


def _complete_rotations(
    n: int, adjacency: dict[int, set[int]], prefixes: dict[int, list[int]], rng: np.random.Generator
) -> EmbeddedGraph:
    rots = []
    for v in range(n):
        head = prefixes.get(v, [])
        rest = sorted(adjacency[v] - set(head))
        rest = [rest[int(k)] for k in rng.permutation(len(rest))]
        rots.append(head + rest)
    return EmbeddedGraph(rots)


def _edges_to_adj(n: int, edges) -> dict[int, set[int]]:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _clique(vs):
    return [(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]]


def five_path_skeleton(four_face: bool):
    """u=0, v=1, w=2, u'=3, x=4, y=5, c=6 and a K7 core on {4..10}."""
    edges = _clique(list(range(4, 11)))
    for s in (0, 2):
        edges += [(s, 1), (s, 3), (s, 4), (s, 5), (s, 6)]
    if four_face:
        # face [u v w u']: v follows u' at u, u' follows v at w
        prefixes = {0: [3, 1], 2: [1, 3]}
    else:
        # faces [u v w x] and [w v u y]
        prefixes = {0: [4, 1, 5, 3, 6], 2: [5, 1, 4, 3, 6], 4: [2, 0], 5: [0, 2]}
    return 11, _edges_to_adj(11, edges), prefixes


def special_six_skeleton(side: str):
    """v=0, v1..v6=1..6, a=7 (v4 v5), b=8 (v5 v6), c=9 (v6 v1), q1..q5=10..14 with v2, v3."""
    core = [2, 3, 10, 11, 12, 13, 14]
    edges = _clique(core)
    edges += [(0, i) for i in range(1, 7)]
    edges += [(7, 4), (7, 5), (8, 5), (8, 6), (9, 6), (9, 1), (1, 2), (3, 4)]
    prefixes = {0: [1, 2, 3, 4, 5, 6], 2: [0, 1], 3: [4, 0], 5: [8, 0, 7], 6: [9, 0, 8]}
    if side == "v6":
        n = 15
        edges += [(1, 10), (1, 11), (1, 12), (4, 10), (4, 11), (4, 13)]
        edges += [(5, 12), (5, 14), (6, 13), (6, 14)]
        prefixes[1] = [2, 0, 9]
        prefixes[4] = [7, 0, 3]
    else:
        n = 16  # e=15 joins v1 and v4
        edges += [(15, 1), (15, 4), (1, 10), (4, 10)]
        edges += [(s, q) for s in (5, 6) for q in (11, 12, 13)]
        prefixes[1] = [2, 0, 9]
        prefixes[4] = [7, 0, 3]
    return n, _edges_to_adj(n, edges), prefixes


def build_gadget(tag: str, variant: str = "", seed: int = 0, attempts: int = 20000) -> EmbeddedGraph:
    """Search seeded rotation completions until the finder reports ``tag``."""
    if tag == R.FIVE_PATH:
        n, adj, prefixes = five_path_skeleton(four_face=False)
    elif tag == R.FOUR_FACE_TWO_TWO_VERTICES:
        n, adj, prefixes = five_path_skeleton(four_face=True)
    elif tag == R.SPECIAL_SIX_NEIGHBOR:
        n, adj, prefixes = special_six_skeleton(variant or "v6")
    else:
        raise GeneratorError(f"no gadget skeleton for {tag}")
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        g = _complete_rotations(n, adj, prefixes, rng)
        cfg = R.find_configuration(g)
        if cfg is None or cfg.tag != tag:
            continue
        if tag == R.SPECIAL_SIX_NEIGHBOR and cfg.side != (variant or "v6"):
            continue
        return g
    raise PlantInfeasibleError(f"no rotation completion exhibits {tag}")


def gadget_text(g: EmbeddedGraph, tag: str, variant: str = "") -> str:
    label = f"{tag} {variant}".strip()
    return format_graph(g, [f"gadget {label}", "built by scripts/build_gadgets.py"])


# --------------------------------------------------------------------------


def generate(spec: GenSpec) -> AbstractGraph:
    kind, p = spec.kind, spec.params
    try:
        if kind == "k7-torus":
            return k7_torus()
        if kind == "torus-grid":
            return torus_grid(int(p[0]), int(p[1]))
        if kind == "cycle":
            return cycle(int(p[0]))
        if kind == "complete":
            return complete(int(p[0]))
        if kind == "random-toroidal":
            return random_toroidal(int(p[0]), spec.seed)
        if kind == "plant":
            name = p[0]
            tag = PLANT_NAMES.get(name, name)
            return plant(tag, spec.seed)
    except (GeneratorError, GraphError):
        raise
    except (IndexError, TypeError, ValueError) as exc:
        raise GeneratorError(f"bad parameters for {kind}: {p}") from exc
    raise GeneratorError(f"unknown generator kind {kind!r}")


def generate_text(spec: GenSpec) -> str:
    return format_graph(generate(spec), spec.header())
