"""Compare the numba and numpy kernel backends on sweep-shaped workloads.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Times the three kernels on the call pattern a corpus sweep produces: many
small G x W matrices rather than a few large ones. Results on one machine
decide nothing for another; run it where you plan to align.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from glossalign import kernels


def _bench(fn, args_list, repeats):
    # warm up (jit compile / cache load)
    for args in args_list[:2]:
        fn(*args)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--calls", type=int, default=2000, help="matrices per repeat")
    args = parser.parse_args()

    if not kernels.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    mats = []
    for _ in range(args.calls):
        g = int(rng.integers(2, 24))
        w = int(rng.integers(2, 24))
        mats.append(np.ascontiguousarray(rng.uniform(-1, 1, size=(g, w))))
    vec_pairs = [
        (
            np.ascontiguousarray(rng.uniform(-1, 1, m.shape[0])),
            np.ascontiguousarray(rng.uniform(-1, 1, m.shape[0])),
        )
        for m in mats
    ]
    curves = [np.ascontiguousarray(rng.uniform(-1, 1, m.shape[0] + 1)) for m in mats]

    cases = [
        ("row_max", [(m,) for m in mats]),
        ("split_curve", vec_pairs),
        ("argmax_near", [(c, int(len(c) // 2)) for c in curves]),
        ("threshold_combine", [(m, m, 0.9) for m in mats]),
    ]
    print(f"{args.calls} calls per repeat, best of {args.repeats} repeats")
    print(f"{'kernel':<20}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for name, args_list in cases:
        t_np = _bench(kernels._NUMPY[name], args_list, args.repeats)
        t_nb = _bench(kernels._NUMBA[name], args_list, args.repeats)
        print(f"{name:<20}{t_np * 1e3:>10.2f}ms{t_nb * 1e3:>10.2f}ms{t_np / t_nb:>9.2f}x")


if __name__ == "__main__":
    main()
