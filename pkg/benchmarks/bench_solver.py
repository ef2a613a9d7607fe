"""Time the compiled search kernel against the pure Python one.

    python3 benchmarks/bench_solver.py [--repeat 3]

Both paths must return the same answer and node count on every instance;
the script exits 1 if they ever disagree.
"""

import argparse
import sys
import time

from oddchrom import _kernels
from oddchrom.generators import complete, cycle, k7_torus, random_toroidal, torus_grid
from oddchrom.solver import exact_chi_odd

INSTANCES = [
    ("K7", complete(7)),
    ("k7 torus", k7_torus()),
    ("C9", cycle(9)),
    ("grid 4x4", torus_grid(4, 4)),
    ("grid 5x6", torus_grid(5, 6)),
    ("random toroidal n=12", random_toroidal(12, 3)),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _kernels.JIT_ENABLED:
        print("numba disabled (ODDCHROM_DISABLE_JIT set or numba missing); both columns run pure Python")
    t0 = time.perf_counter()
    exact_chi_odd(complete(3))  # compile outside the timed region
    print(f"compile + first call: {time.perf_counter() - t0:.2f}s\n")

    print(f"{'instance':24s} {'chi':>3s} {'nodes':>8s} {'jit ms':>9s} {'pure ms':>9s} {'speedup':>8s}")
    mismatch = False
    for name, g in INSTANCES:
        tj, rj = best_of(lambda: exact_chi_odd(g, use_jit=True), args.repeat)
        tp, rp = best_of(lambda: exact_chi_odd(g, use_jit=False), args.repeat)
        same = (rj.chi_odd, rj.nodes_explored) == (rp.chi_odd, rp.nodes_explored)
        mismatch |= not same
        print(
            f"{name:24s} {rj.chi_odd!s:>3s} {rj.nodes_explored:8d} {tj * 1e3:9.2f} {tp * 1e3:9.2f} "
            f"{tp / tj:7.1f}x" + ("" if same else "  MISMATCH")
        )
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
