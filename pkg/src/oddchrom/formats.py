"""Text formats: rotation systems, DIMACS edge lists and colorings.

Rotation system::

    V 3
    R 0: 1 2
    R 1: 2 0
    R 2: 0 1

DIMACS-like (1-based)::

    p edge 3 3
    e 1 2
    e 2 3
    e 1 3

Coloring: one ``<vertex> <color>`` pair per line, 0-based vertex, 1-based color.
"""

from __future__ import annotations

from .coloring import Coloring
from .graph import AbstractGraph, EmbeddedGraph, ParseError


def _content_lines(text: str, comment_prefixes: tuple[str, ...] = ("#",)):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.split()[0] in comment_prefixes:
            continue
        yield lineno, line


def _int_token(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None


def _tokens(line: str):
    """Split on whitespace, yielding (token, 1-based column)."""
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield tok, col + 1
        col += len(tok)


def parse_rotation_system(text: str) -> EmbeddedGraph:
    n = None
    rotations: list[list[int] | None] = []
    for lineno, line in _content_lines(text):
        toks = list(_tokens(line))
        head, col = toks[0]
        if n is None:
            if head != "V" or len(toks) != 2:
                raise ParseError("expected 'V <n>' header", lineno, col)
            n = _int_token(toks[1][0], lineno, toks[1][1])
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno, toks[1][1])
            rotations = [None] * n
            continue
        if head == "R":
            if len(toks) < 2 or not toks[1][0].endswith(":"):
                raise ParseError("expected 'R <v>: <neighbours>'", lineno, col)
            vtok, vcol = toks[1]
            v = _int_token(vtok[:-1], lineno, vcol)
            rest = toks[2:]
        elif head.startswith("R") and head.endswith(":"):
            v = _int_token(head[1:-1], lineno, col + 1)
            vcol = col
            rest = toks[1:]
        else:
            raise ParseError(f"unexpected token {head!r}", lineno, col)
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} out of range 0..{n - 1}", lineno, vcol)
        if rotations[v] is not None:
            raise ParseError(f"second rotation line for vertex {v}", lineno, col)
        row = []
        for tok, tcol in rest:
            u = _int_token(tok, lineno, tcol)
            if not 0 <= u < n:
                raise ParseError(f"neighbour {u} out of range 0..{n - 1}", lineno, tcol)
            row.append(u)
        rotations[v] = row
    if n is None:
        raise ParseError("empty input: missing 'V <n>' header", 1, 1)
    return EmbeddedGraph([r if r is not None else [] for r in rotations])


def parse_dimacs(text: str) -> AbstractGraph:
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, line in _content_lines(text, ("#", "c")):
        toks = list(_tokens(line))
        head, col = toks[0]
        if head == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno, col)
            if len(toks) != 4 or toks[1][0] not in ("edge", "edges", "col"):
                raise ParseError("expected 'p edge <n> <m>'", lineno, col)
            n = _int_token(toks[2][0], lineno, toks[2][1])
            m = _int_token(toks[3][0], lineno, toks[3][1])
        elif head == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno, col)
            if len(toks) != 3:
                raise ParseError("expected 'e <u> <v>'", lineno, col)
            u = _int_token(toks[1][0], lineno, toks[1][1])
            v = _int_token(toks[2][0], lineno, toks[2][1])
            for x, (_, xcol) in ((u, toks[1]), (v, toks[2])):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} out of range 1..{n}", lineno, xcol)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unexpected token {head!r}", lineno, col)
    if n is None:
        raise ParseError("empty input: missing 'p edge' line", 1, 1)
    if m != len(edges):
        raise ParseError(f"problem line announces {m} edges, found {len(edges)}", 1, 1)
    return AbstractGraph.from_edges(n, edges)


def parse_graph(text: str) -> AbstractGraph:
    """Dispatch on the first non-comment token: ``V`` or ``p``."""
    for lineno, line in _content_lines(text, ("#", "c")):
        tok, col = next(_tokens(line))
        if tok == "V":
            return parse_rotation_system(text)
        if tok == "p":
            return parse_dimacs(text)
        raise ParseError(f"cannot detect format from token {tok!r}", lineno, col)
    raise ParseError("empty input", 1, 1)


def format_rotation_system(g: EmbeddedGraph, header: list[str] | None = None) -> str:
    lines = [f"# {h}" for h in header or []]
    lines.append(f"V {g.n}")
    for v, rot in enumerate(g.rotations):
        lines.append(f"R {v}: " + " ".join(map(str, rot)) if rot else f"R {v}:")
    return "\n".join(lines) + "\n"


def format_dimacs(g: AbstractGraph, header: list[str] | None = None) -> str:
    lines = [f"c {h}" for h in header or []]
    edges = g.edges()
    lines.append(f"p edge {g.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def format_graph(g: AbstractGraph, header: list[str] | None = None) -> str:
    if isinstance(g, EmbeddedGraph):
        return format_rotation_system(g, header)
    return format_dimacs(g, header)


def parse_coloring(text: str, n: int, k: int | None = None) -> Coloring:
    """Read ``<vertex> <color>`` lines; unlisted vertices stay uncolored."""
    colors = [0] * n
    seen = set()
    for lineno, line in _content_lines(text):
        toks = list(_tokens(line))
        if len(toks) != 2:
            raise ParseError("expected '<vertex> <color>'", lineno, toks[0][1])
        v = _int_token(toks[0][0], lineno, toks[0][1])
        c = _int_token(toks[1][0], lineno, toks[1][1])
        if not 0 <= v < n:
            raise ParseError(f"unknown vertex {v}", lineno, toks[0][1])
        if v in seen:
            raise ParseError(f"vertex {v} colored twice", lineno, toks[0][1])
        if c < 1:
            raise ParseError(f"colors are 1-based, got {c}", lineno, toks[1][1])
        seen.add(v)
        colors[v] = c
    top = max(colors, default=0)
    return Coloring(max(k or 0, top, 1), tuple(colors))


def format_coloring(c: Coloring) -> str:
    return "".join(f"{v} {col}\n" for v, col in enumerate(c.colors) if col)
