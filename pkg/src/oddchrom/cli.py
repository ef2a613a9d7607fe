"""``oddchrom`` command line: solve, verify, audit, reduce, gen, lemmas.

Reports are JSON with sorted keys on stdout (or in ``--out``).  Exit codes:
0 success, 1 a verification or claim failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .coloring import verify_odd_coloring
from .discharging import audit, check_structural_lemmas
from .formats import parse_coloring, parse_graph
from .generators import GenSpec, GeneratorError, KINDS, generate_text
from .graph import AbstractGraph, EmbeddedGraph, GraphError
from .reduction import (
    ExtensionFailure,
    FallbackExhausted,
    HypothesisError,
    color_without_adjacent_triangles,
)
from .solver import BRUTE_FORCE_MAX_VERTICES, brute_force_chi_odd, exact_chi_odd

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(obj, out: str | None) -> None:
    text = _dump(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> AbstractGraph:
    return parse_graph(_read(path))


def _load_embedded(path: str) -> EmbeddedGraph:
    """Rotation files load as-is; edge lists get the sorted-neighbour rotation."""
    g = _load_graph(path)
    if isinstance(g, EmbeddedGraph):
        return g
    return EmbeddedGraph([sorted(g.adj[v]) for v in range(g.n)])


def _default_seed() -> int:
    raw = os.environ.get("ODDCHROM_SEED", "")
    try:
        return int(raw) if raw else 0
    except ValueError:
        raise InputError(f"ODDCHROM_SEED must be an integer, got {raw!r}") from None


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    result = exact_chi_odd(g, args.max_k)
    report = result.to_json()
    if result.witness is not None and not verify_odd_coloring(g, result.witness, result.chi_odd):
        report["error"] = "witness failed verification"
        _emit(report, args.out)
        return EXIT_FAIL
    if args.oracle:
        if g.n > BRUTE_FORCE_MAX_VERTICES:
            report["oracle"] = {"skipped": f"more than {BRUTE_FORCE_MAX_VERTICES} vertices"}
        else:
            oracle = brute_force_chi_odd(g, args.max_k)
            report["oracle"] = {"chiOdd": oracle.chi_odd, "agrees": oracle.chi_odd == result.chi_odd}
            if oracle.chi_odd != result.chi_odd:
                report["diff"] = {"exact": result.chi_odd, "bruteForce": oracle.chi_odd}
                _emit(report, args.out)
                return EXIT_FAIL
    _emit(report, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    c = parse_coloring(_read(args.coloring), g.n, args.k)
    cert = verify_odd_coloring(g, c, args.k)
    _emit(cert.to_json(), args.out)
    return EXIT_OK if cert.valid else EXIT_FAIL


def cmd_audit(args) -> int:
    g = _load_embedded(args.graph)
    report = audit(g)
    if report.genus is None:
        raise InputError("graph is disconnected; genus is undefined (audit components separately)")
    _emit(report.to_json(), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _load_embedded(args.graph)
    try:
        result = color_without_adjacent_triangles(g)
    except HypothesisError as exc:
        _emit({"error": "hypothesis", "message": str(exc)}, args.out)
        return EXIT_INPUT
    except ExtensionFailure as exc:
        _emit(
            {
                "error": "extension-failure",
                "configuration": exc.configuration.to_json(),
                "reducedColoring": list(exc.reduced_coloring.colors),
            },
            args.out,
        )
        return EXIT_FAIL
    except FallbackExhausted as exc:
        _emit({"error": "fallback-exhausted", "message": str(exc)}, args.out)
        return EXIT_FAIL
    if not verify_odd_coloring(g, result.coloring, 8):
        _emit({"error": "coloring failed verification"}, args.out)
        return EXIT_FAIL
    _emit(result.to_json(), args.out)
    return EXIT_OK


def _param(raw: str) -> int | str:
    try:
        return int(raw)
    except ValueError:
        return raw


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    spec = GenSpec(args.kind, tuple(_param(x) for x in args.params), seed)
    try:
        text = generate_text(spec)
    except GeneratorError as exc:
        raise InputError(str(exc)) from None
    echo = {"kind": spec.kind, "params": list(spec.params), "seed": spec.seed}
    if args.out:
        Path(args.out).write_text(text)
        sys.stdout.write(_dump({"spec": echo, "out": args.out}))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_lemmas(args) -> int:
    g = _load_embedded(args.graph)
    _emit(check_structural_lemmas(g), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oddchrom", description="Odd colorings of embedded graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact odd chromatic number")
    p.add_argument("graph")
    p.add_argument("--max-k", type=int, default=8)
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check an odd coloring")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--k", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="discharging ledger report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("reduce", help="odd 8-coloring by reductions")
    p.add_argument("graph")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("lemmas", help="violated structural statements")
    p.add_argument("graph")
    p.set_defaults(func=cmd_lemmas)

    for name in ("solve", "verify", "audit", "reduce", "gen", "lemmas"):
        sub.choices[name].add_argument("--out", default=None, help="write output here")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphError, GeneratorError) as exc:
        sys.stdout.write(_dump({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
