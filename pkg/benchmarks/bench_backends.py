#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-NumPy fallback.

Times the two hot paths on pipeline-shaped workloads:

* correlate_full on window pairs (the per-window, per-baseline inner loop)
* kalman_local_level on record-length signals

Run:  python benchmarks/bench_backends.py [--windows N] [--length W]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from itfmap import _core


def time_fn(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_correlation(n_windows: int, window: int) -> tuple[float, float]:
    rng = np.random.default_rng(0)
    pairs = [
        (rng.normal(size=window), rng.normal(size=window)) for _ in range(n_windows)
    ]

    def run(kernel):
        for x, y in pairs:
            kernel(x, y)

    return time_fn(run, _core.correlate_full), time_fn(run, _core.correlate_full_py)


def bench_kalman(length: int) -> tuple[float, float]:
    rng = np.random.default_rng(1)
    z = rng.normal(size=length)
    return (
        time_fn(_core.kalman_local_level, z, 0.01, 1.0),
        time_fn(_core.kalman_local_level_py, z, 0.01, 1.0),
    )


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--windows", type=int, default=500, help="window pairs to correlate")
    ap.add_argument("--length", type=int, default=256, help="samples per window")
    ap.add_argument("--record", type=int, default=200_000, help="Kalman record length")
    args = ap.parse_args()

    print(f"active backend: {_core.BACKEND}")
    if _core.BACKEND != "cython":
        print("compiled extension not present; timing the fallback against itself")

    c_corr, py_corr = bench_correlation(args.windows, args.length)
    c_kal, py_kal = bench_kalman(args.record)

    rows = [
        ("correlate_full", f"{args.windows} x W={args.length}", c_corr, py_corr),
        ("kalman_local_level", f"n={args.record}", c_kal, py_kal),
    ]
    print(f"{'kernel':<20} {'workload':<18} {'compiled':>10} {'numpy':>10} {'speedup':>8}")
    for name, load, tc, tp in rows:
        print(f"{name:<20} {load:<18} {tc*1e3:>8.1f}ms {tp*1e3:>8.1f}ms {tp/tc:>7.2f}x")

    # equivalence spot check alongside the timing
    rng = np.random.default_rng(2)
    x, y = rng.normal(size=args.length), rng.normal(size=args.length)
    assert np.allclose(_core.correlate_full(x, y), _core.correlate_full_py(x, y), atol=1e-12)
    z = rng.normal(size=1000)
    assert np.allclose(
        _core.kalman_local_level(z, 0.01, 1.0), _core.kalman_local_level_py(z, 0.01, 1.0)
    )
    print("backend outputs agree (1e-12)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
