"""Regenerate the gadget rotation files shipped in src/oddchrom/gadgets."""

from __future__ import annotations

import argparse
from pathlib import Path

from oddchrom import reduction as R
from oddchrom.generators import build_gadget, gadget_text

TARGETS = [
    (R.FIVE_PATH, "", "five_path.rot"),
    (R.FOUR_FACE_TWO_TWO_VERTICES, "", "four_face_two_two_vertices.rot"),
    (R.SPECIAL_SIX_NEIGHBOR, "v6", "special_six_v6_side.rot"),
    (R.SPECIAL_SIX_NEIGHBOR, "v1", "special_six_v1_side.rot"),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument(
        "--out", type=Path, default=Path(__file__).resolve().parent.parent / "src/oddchrom/gadgets"
    )
    args = ap.parse_args()
    for tag, variant, name in TARGETS:
        g = build_gadget(tag, variant, seed=args.seed)
        (args.out / name).write_text(gadget_text(g, tag, variant))
        print(f"{name}: {g.n} vertices, {g.edge_count} edges")


if __name__ == "__main__":
    main()
