"""Abstract and embedded graphs, face tracing, genus and structural predicates.

An :class:`EmbeddedGraph` carries a rotation system: for every vertex the
clockwise cyclic order of its neighbours.  Faces are traced with the usual
rule: after arriving at ``v`` along ``u -> v`` the walk leaves along
``v -> succ_v(u)``, the rotation successor of ``u`` at ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for malformed graph input."""


class ParseError(GraphError):
    """Syntax error in a graph or coloring file."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class AsymmetricAdjacencyError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateNeighborError(GraphError):
    pass


class NonEdgeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class AbstractGraph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if n < 0 or len(adjacency) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adjacency)}")
        rows = []
        for v, nbrs in enumerate(adjacency):
            nbrs = list(nbrs)
            for u in nbrs:
                if not 0 <= u < n:
                    raise GraphError(f"vertex {v} has out-of-range neighbour {u}")
                if u == v:
                    raise SelfLoopError(f"self-loop at vertex {v}")
            row = frozenset(nbrs)
            if len(row) != len(nbrs):
                raise DuplicateNeighborError(f"vertex {v} lists a neighbour twice")
            rows.append(row)
        for v, row in enumerate(rows):
            for u in row:
                if v not in rows[u]:
                    raise AsymmetricAdjacencyError(
                        f"{u} is a neighbour of {v} but {v} is not a neighbour of {u}"
                    )
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "AbstractGraph":
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        return cls(n, adjacency)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    def degrees(self) -> list[int]:
        return [len(row) for row in self.adj]

    def to_abstract(self) -> "AbstractGraph":
        return AbstractGraph(self.n, self.adj) if type(self) is not AbstractGraph else self

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.n

    def relabel(self, perm: Sequence[int]) -> "AbstractGraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            rows[perm[v]] = [perm[u] for u in self.adj[v]]
        return AbstractGraph(self.n, rows)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.edge_count})"


class EmbeddedGraph(AbstractGraph):
    """Simple graph together with a rotation system (orientable embedding)."""

    __slots__ = ("rotations",)

    def __init__(self, rotations: Sequence[Sequence[int]]):
        rots = tuple(tuple(r) for r in rotations)
        super().__init__(len(rots), rots)
        self.rotations: tuple[tuple[int, ...], ...] = rots

    def successor(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation at ``v``."""
        rot = self.rotations[v]
        return rot[(rot.index(u) + 1) % len(rot)]

    def to_abstract(self) -> AbstractGraph:
        return AbstractGraph(self.n, self.adj)

    def relabel(self, perm: Sequence[int]) -> "EmbeddedGraph":
        rows: list[tuple[int, ...]] = [()] * self.n
        for v in range(self.n):
            rows[perm[v]] = tuple(perm[u] for u in self.rotations[v])
        return EmbeddedGraph(rows)

    def __eq__(self, other: object) -> bool:
        return type(other) is EmbeddedGraph and self.rotations == other.rotations

    def __hash__(self) -> int:
        return hash(self.rotations)


@dataclass(frozen=True)
class FaceSet:
    """Faces of an embedded graph as closed boundary walks.

    ``faces[i]`` lists the vertices ``(x_0, ..., x_{k-1})`` of face ``i``; its
    directed edges are ``x_j -> x_{j+1}`` (indices mod ``k``).
    """

    faces: tuple[tuple[int, ...], ...]
    face_of: dict[tuple[int, int], int]

    def __len__(self) -> int:
        return len(self.faces)

    def degree(self, f: int) -> int:
        return len(self.faces[f])

    def darts(self, f: int) -> list[tuple[int, int]]:
        walk = self.faces[f]
        return [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]

    def corner_faces(self, g: EmbeddedGraph, v: int) -> tuple[int, ...]:
        """Faces around ``v``; entry ``j`` lies between ``rot[j]`` and ``rot[j+1]``."""
        return tuple(self.face_of[(u, v)] for u in g.rotations[v])


@dataclass(frozen=True)
class VertexClass:
    degree: int
    two_neighbor_count: int
    convenient: bool
    special: bool = False

    @property
    def label(self) -> str:
        return f"{self.degree}_{self.two_neighbor_count}"


def trace_faces(g: EmbeddedGraph) -> FaceSet:
    """Trace all faces of the rotation system, lowest unused dart first."""
    face_of: dict[tuple[int, int], int] = {}
    faces: list[tuple[int, ...]] = []
    for u in range(g.n):
        for v in sorted(g.rotations[u]):
            if (u, v) in face_of:
                continue
            fid = len(faces)
            walk = []
            a, b = u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = fid
                walk.append(a)
                a, b = b, g.successor(b, a)
            faces.append(tuple(walk))
    return FaceSet(tuple(faces), face_of)


def euler_genus(g: EmbeddedGraph, fs: FaceSet | None = None) -> int:
    """Orientable genus of the embedding, ``(2 - V + E - F) / 2``."""
    if not g.is_connected():
        raise DisconnectedGraphError("genus is only defined for connected graphs")
    if g.n == 0:
        return 0
    if fs is None:
        fs = trace_faces(g)
    # a lone vertex has one (edgeless) face that tracing cannot see
    f = len(fs) if g.edge_count else 1
    twice = 2 - g.n + g.edge_count - f
    if twice < 0 or twice % 2:
        raise GraphError(f"inconsistent Euler characteristic: 2g = {twice}")
    return twice // 2


def has_adjacent_triangles(g: AbstractGraph) -> bool:
    return any(len(g.adj[u] & g.adj[v]) >= 2 for u, v in g.edges())


def triangles(g: AbstractGraph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges():
        for w in g.adj[u] & g.adj[v]:
            if w > v:
                out.append((u, v, w))
    return out


def two_neighbor_count(g: AbstractGraph, v: int) -> int:
    return sum(1 for u in g.adj[v] if len(g.adj[u]) == 2)


def is_convenient(g: AbstractGraph, v: int) -> bool:
    d = len(g.adj[v])
    if d < 4:
        return False
    return d % 2 == 1 or two_neighbor_count(g, v) >= 1


def classify_vertex(g: AbstractGraph, v: int) -> VertexClass:
    return VertexClass(
        degree=g.degree(v),
        two_neighbor_count=two_neighbor_count(g, v),
        convenient=is_convenient(g, v),
    )


def face_two_vertex_count(g: AbstractGraph, fs: FaceSet, f: int) -> int:
    return len({x for x in fs.faces[f] if len(g.adj[x]) == 2})


def is_four_one_face(g: AbstractGraph, fs: FaceSet, f: int) -> bool:
    return fs.degree(f) == 4 and face_two_vertex_count(g, fs, f) == 1


def special_labelings(g: EmbeddedGraph, fs: FaceSet, v: int) -> list[tuple[int, ...]]:
    """All labelings ``(v_1, ..., v_6)`` of the neighbours of ``v`` witnessing specialness.

    Face ``f_i`` sits between ``v_i`` and ``v_{i+1}``; the pattern needs
    ``f_1, f_3`` of degree 3 and ``f_4, f_5, f_6`` to be 4_1-faces.  Both
    orientations are scanned.  Empty unless ``v`` is a non-convenient 6-vertex.
    """
    if g.degree(v) != 6 or is_convenient(g, v):
        return []
    rot = g.rotations[v]
    corners = fs.corner_faces(g, v)
    tri = [fs.degree(f) == 3 for f in corners]
    four1 = [is_four_one_face(g, fs, f) for f in corners]
    found = []
    for s in range(6):
        for sign in (1, -1):
            # corner between v_i and v_{i+1} in this labeling
            if sign == 1:
                labels = tuple(rot[(s + i) % 6] for i in range(6))
                corner = [(s + i) % 6 for i in range(6)]
            else:
                labels = tuple(rot[(s - i) % 6] for i in range(6))
                corner = [(s - i - 1) % 6 for i in range(6)]
            if tri[corner[0]] and tri[corner[2]] and all(four1[corner[j]] for j in (3, 4, 5)):
                if labels not in found:
                    found.append(labels)
    return found


def classify_special(g: EmbeddedGraph, fs: FaceSet, v: int) -> bool:
    return bool(special_labelings(g, fs, v))


def subdivide_edge(g: AbstractGraph, u: int, v: int) -> AbstractGraph:
    """Replace edge ``uv`` by a path ``u - w - v`` through a new vertex ``w = n``.

    On an embedded graph ``w`` takes over the rotation slots of the removed
    neighbours, so the face structure and genus are unchanged.
    """
    if not g.has_edge(u, v):
        raise NonEdgeError(f"{u}-{v} is not an edge")
    w = g.n
    if isinstance(g, EmbeddedGraph):
        rots = [list(r) for r in g.rotations]
        rots[u][rots[u].index(v)] = w
        rots[v][rots[v].index(u)] = w
        rots.append([u, v])
        return EmbeddedGraph(rots)
    rows = [set(r) for r in g.adj]
    rows[u].discard(v)
    rows[v].discard(u)
    rows[u].add(w)
    rows[v].add(w)
    rows.append({u, v})
    return AbstractGraph(g.n + 1, rows)


def delete_vertex(g: AbstractGraph, v: int) -> AbstractGraph:
    """Remove ``v``; vertices above ``v`` shift down by one."""
    return delete_vertices(g, [v])


def delete_vertices(g: AbstractGraph, removed: Iterable[int]) -> AbstractGraph:
    gone = set(removed)
    new_id = surviving_ids(g.n, gone)
    if isinstance(g, EmbeddedGraph):
        rots = [
            [new_id[u] for u in g.rotations[x] if u not in gone]
            for x in range(g.n)
            if x not in gone
        ]
        return EmbeddedGraph(rots)
    rows = [[new_id[u] for u in g.adj[x] if u not in gone] for x in range(g.n) if x not in gone]
    return AbstractGraph(len(rows), rows)


def surviving_ids(n: int, removed: set[int]) -> dict[int, int]:
    """Map each kept vertex to its id after deleting ``removed``."""
    out = {}
    nxt = 0
    for x in range(n):
        if x not in removed:
            out[x] = nxt
            nxt += 1
    return out
