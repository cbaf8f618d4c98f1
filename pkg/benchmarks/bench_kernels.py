"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Prints one line per kernel with the best-of-N wall time of each backend
and the speedup.  Both backends are asked the same questions and their
answers are compared, so a mismatch aborts the run.
"""

from __future__ import annotations

import argparse
import sys
import time

from sparsesep import kernels
from sparsesep.generators import gnp, grid


def _best(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def cases(seed: int):
    g16 = gnp(16, 0.35, seed)
    g14 = gnp(14, 0.3, seed + 1)
    g18 = gnp(18, 0.25, seed + 2)
    g10 = gnp(10, 0.4, seed + 3)
    grid4 = grid(2, 4)
    return [
        ("separator_search gnp(16)", lambda k: k.separator_search(g16.adj_masks, g16.n, g16.n)),
        ("separator_search grid4x4", lambda k: k.separator_search(grid4.adj_masks, grid4.n, grid4.n)),
        ("treewidth_dp gnp(18)", lambda k: k.treewidth_dp(g18.adj_masks, g18.n)),
        ("strong_col_dp gnp(10) r=2", lambda k: k.strong_col_dp(g10.adj_masks, g10.n, 2)),
        ("min_vertex_expansion gnp(14)", lambda k: k.min_vertex_expansion(g14.adj_masks, g14.n)),
        (
            "reach gnp(16) all starts",
            lambda k: [k.reach(g16.adj_masks, v, (1 << 16) - 1 - (1 << v), 3) for v in range(16)],
        ),
    ]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available", file=sys.stderr)
        return 1
    fast, slow = backends["cython"], backends["python"]
    print(f"{'kernel':34} {'cython [s]':>11} {'python [s]':>11} {'speedup':>8}")
    for name, call in cases(args.seed):
        t_fast, r_fast = _best(lambda: call(fast), args.repeat)
        t_slow, r_slow = _best(lambda: call(slow), args.repeat)
        if r_fast != r_slow:
            print(f"backends disagree on {name}", file=sys.stderr)
            return 1
        print(f"{name:34} {t_fast:11.4f} {t_slow:11.4f} {t_slow / max(t_fast, 1e-9):7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
