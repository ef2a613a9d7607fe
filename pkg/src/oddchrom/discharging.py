"""Charge redistribution on embedded graphs, in exact integer eighths.

Every vertex and face starts with ``8 * (d - 4)`` eighths.  Five rules move
charge between vertices and faces:

* R1: a 5+-vertex sends 4 to each adjacent 2-vertex.
* R2: a 4+-face sends 4 to each incident 2-vertex.
* R3: a non-convenient 6+-vertex sends 4 to each incident 3-face or 4_1-face.
* R4: a convenient k_i-vertex sends 1 to each adjacent special 6-vertex when
  k >= 5, i <= k - 1, i = 1 for k = 5 and i <= 3 for k = 6.
* R5: a 6+-face sends 1 to each incident 4+-vertex.

Face incidences follow boundary walks, so a vertex appearing twice on a walk
is counted twice.  ``audit`` reports the numbers and nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    DisconnectedGraphError,
    EmbeddedGraph,
    FaceSet,
    classify_special,
    classify_vertex,
    euler_genus,
    face_two_vertex_count,
    is_convenient,
    is_four_one_face,
    special_labelings,
    trace_faces,
    two_neighbor_count,
)

HALF = 4
EIGHTH = 1
R4_READING = "k>=5, i<=k-1; i=1 if k=5; i<=3 if k=6"

VERTEX = "vertex"
FACE = "face"


class LedgerPhaseError(RuntimeError):
    pass


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: tuple[str, int]
    sink: tuple[str, int]
    amount: int
    note: dict | None = None

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "from": {"kind": self.source[0], "id": self.source[1]},
            "to": {"kind": self.sink[0], "id": self.sink[1]},
            "amountEighths": self.amount,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ChargeLedger:
    initial: dict[tuple[str, int], int]
    degrees: dict[tuple[str, int], int]
    transfers: list[Transfer] = field(default_factory=list)
    rules_applied: bool = False

    def final(self) -> dict[tuple[str, int], int]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.sink] += t.amount
        return out

    @property
    def total_initial(self) -> int:
        return sum(self.initial.values())

    @property
    def total_final(self) -> int:
        return sum(self.final().values())


def initial_charges(g: EmbeddedGraph, fs: FaceSet) -> ChargeLedger:
    initial: dict[tuple[str, int], int] = {}
    degrees: dict[tuple[str, int], int] = {}
    for v in range(g.n):
        degrees[(VERTEX, v)] = g.degree(v)
        initial[(VERTEX, v)] = 8 * (g.degree(v) - 4)
    for f in range(len(fs.faces)):
        degrees[(FACE, f)] = fs.degree(f)
        initial[(FACE, f)] = 8 * (fs.degree(f) - 4)
    return ChargeLedger(initial, degrees)


def r4_sender(k: int, i: int) -> bool:
    if k < 5 or i > k - 1:
        return False
    if k == 5:
        return i == 1
    if k == 6:
        return i <= 3
    return True


def apply_rules(g: EmbeddedGraph, fs: FaceSet, ledger: ChargeLedger) -> ChargeLedger:
    if ledger.rules_applied:
        raise LedgerPhaseError("rules were already applied to this ledger")
    out: list[Transfer] = []
    deg = g.degrees()
    conv = [is_convenient(g, v) for v in range(g.n)]

    for v in range(g.n):
        if deg[v] >= 5:
            for u in g.neighbors(v):
                if deg[u] == 2:
                    out.append(Transfer("R1", (VERTEX, v), (VERTEX, u), HALF))

    for f, walk in enumerate(fs.faces):
        if len(walk) >= 4:
            for x in walk:
                if deg[x] == 2:
                    out.append(Transfer("R2", (FACE, f), (VERTEX, x), HALF))

    for v in range(g.n):
        if deg[v] >= 6 and not conv[v]:
            for f in fs.corner_faces(g, v):
                if fs.degree(f) == 3 or is_four_one_face(g, fs, f):
                    out.append(Transfer("R3", (VERTEX, v), (FACE, f), HALF))

    special = [deg[v] == 6 and not conv[v] and classify_special(g, fs, v) for v in range(g.n)]
    for v in range(g.n):
        if not conv[v]:
            continue
        k, i = deg[v], two_neighbor_count(g, v)
        if not r4_sender(k, i):
            continue
        for u in g.neighbors(v):
            if special[u]:
                out.append(Transfer("R4", (VERTEX, v), (VERTEX, u), EIGHTH, {"k": k, "i": i}))

    for f, walk in enumerate(fs.faces):
        if len(walk) >= 6:
            for x in walk:
                if deg[x] >= 4:
                    out.append(Transfer("R5", (FACE, f), (VERTEX, x), EIGHTH))

    ledger.transfers.extend(out)
    ledger.rules_applied = True
    return ledger


def _describe(g: EmbeddedGraph, fs: FaceSet, key: tuple[str, int]) -> dict:
    kind, x = key
    if kind == VERTEX:
        cls = classify_vertex(g, x)
        return {
            "class": cls.label,
            "convenient": cls.convenient,
            "neighborDegrees": [g.degree(u) for u in g.rotations[x]],
            "faceDegrees": [fs.degree(f) for f in fs.corner_faces(g, x)],
        }
    return {
        "boundary": list(fs.faces[x]),
        "vertexDegrees": [g.degree(u) for u in fs.faces[x]],
        "twoVertices": face_two_vertex_count(g, fs, x),
    }


@dataclass
class AuditReport:
    genus: int | None
    ledger: ChargeLedger
    negatives: list[dict]

    @property
    def conservation(self) -> bool:
        return self.ledger.total_initial == self.ledger.total_final

    def to_json(self) -> dict:
        final = self.ledger.final()
        return {
            "genus": self.genus,
            "totalInitialEighths": self.ledger.total_initial,
            "totalFinalEighths": self.ledger.total_final,
            "conservation": self.conservation,
            "r4Reading": R4_READING,
            "elements": [
                {
                    "kind": kind,
                    "id": x,
                    "degree": self.ledger.degrees[(kind, x)],
                    "initialEighths": self.ledger.initial[(kind, x)],
                    "finalEighths": final[(kind, x)],
                }
                for kind, x in self.ledger.initial
            ],
            "transfers": [t.to_json() for t in self.ledger.transfers],
            "negatives": self.negatives,
        }


def audit(g: EmbeddedGraph, fs: FaceSet | None = None) -> AuditReport:
    fs = fs if fs is not None else trace_faces(g)
    try:
        genus: int | None = euler_genus(g, fs)
    except DisconnectedGraphError:
        genus = None
    ledger = apply_rules(g, fs, initial_charges(g, fs))
    final = ledger.final()
    negatives = [
        {"kind": kind, "id": x, "finalEighths": final[(kind, x)], "neighborhood": _describe(g, fs, (kind, x))}
        for kind, x in ledger.initial
        if final[(kind, x)] < 0
    ]
    return AuditReport(genus, ledger, negatives)


# --------------------------------------------------------------------------
# structural statements, evaluated directly


def _k_i(g, x, k, i):
    return g.degree(x) == k and two_neighbor_count(g, x) == i


def check_structural_lemmas(g: EmbeddedGraph, fs: FaceSet | None = None) -> list[dict]:
    """Every violated structural statement with the vertices or faces witnessing it."""
    fs = fs if fs is not None else trace_faces(g)
    deg = g.degrees()
    conv = [is_convenient(g, v) for v in range(g.n)]
    out: list[dict] = []

    def add(tag, statement, actors, faces=()):
        rec = {"tag": tag, "statement": statement, "actors": list(actors)}
        if faces:
            rec["faces"] = list(faces)
        out.append(rec)

    for v in range(g.n):
        if deg[v] == 3:
            add("ThreeVertex", "no 3-vertices", [v])
    for u, v in g.edges():
        if deg[u] == 2 and deg[v] == 2:
            add("AdjacentTwoVertices", "2-vertices are pairwise non-adjacent", [u, v])
    for u, v in g.edges():
        if conv[u] and conv[v]:
            add("AdjacentConvenient", "convenient vertices are pairwise non-adjacent", [u, v])
    for v in range(g.n):
        k = deg[v]
        if 4 <= k <= 7:
            bad = sorted(u for u in g.adj[v] if deg[u] == 2 or conv[u])
            if len(bad) > 2 * k - 8:
                add(
                    "OverloadedKVertex",
                    "a k-vertex with 4<=k<=7 has at most 2k-8 neighbours that are 2-vertices or convenient",
                    [v, *bad],
                )
    for f, walk in enumerate(fs.faces):
        twos = sorted({x for x in walk if deg[x] == 2})
        if len(walk) == 3 and twos:
            add("ThreeFaceWithTwoVertex", "3-faces have no 2-vertex", twos, [f])
        elif len(walk) in (4, 5) and len(twos) >= 2:
            tag = "FourFaceTwoTwoVertices" if len(walk) == 4 else "FiveFaceTwoTwoVertices"
            add(tag, "4- and 5-faces have at most one 2-vertex", twos, [f])
    for u, v in g.edges():
        if deg[u] == 4 and deg[v] == 4:
            add("AdjacentFourVertices", "4-vertices are pairwise non-adjacent", [u, v])
    for f, walk in enumerate(fs.faces):
        if len(walk) == 3:
            good = {x for x in walk if deg[x] >= 6 and not conv[x]}
            if len(good) < 2:
                add(
                    "ThreeFaceBadIncidence",
                    "3-faces have at least two non-convenient 6+-vertices",
                    sorted(walk),
                    [f],
                )
    for v in range(g.n):
        if deg[v] != 6 or conv[v]:
            continue
        hits = set()
        for lab in special_labelings(g, fs, v):
            for x in (lab[0], lab[3], lab[4], lab[5]):
                if _k_i(g, x, 5, 2) or _k_i(g, x, 6, 4):
                    hits.add(x)
        if hits:
            add(
                "SpecialSixNeighbor",
                "neighbours v1, v4, v5, v6 of a special 6-vertex are neither 5_2 nor 6_4",
                [v, *sorted(hits)],
            )
    for v in range(g.n):
        if deg[v] != 2:
            continue
        u, w = g.neighbors(v)
        if not (_k_i(g, u, 5, 2) and _k_i(g, w, 5, 2)):
            continue
        f1, f2 = fs.face_of[(u, v)], fs.face_of[(w, v)]
        if is_four_one_face(g, fs, f1) and is_four_one_face(g, fs, f2):
            add(
                "FivePath",
                "a 2-path through a 2-vertex between two 5_2-vertices is not flanked by two 4_1-faces",
                [u, v, w],
                [f1, f2],
            )
    return out
