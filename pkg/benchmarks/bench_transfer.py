#!/usr/bin/env python3
"""Benchmark the compiled transfer kernel against the pure-numpy fallback.

Runs the full clustering dynamics (weights fixed, threshold inside the blob
plateau) on seeded Gaussian blobs of growing size and reports the median
wall time per backend.

    python3 benchmarks/bench_transfer.py [--repeats 5]
"""

import argparse
import time

from latclust import _core_py
from latclust.dynamics import DynamicsConfig, run_dynamics
from latclust.io import BlobSpec, gen_blobs
from latclust.model import build_weights, distances_from_points

try:
    from latclust import _core
except ImportError:
    _core = None

SIZES = [20, 50, 100, 200]  # points per cluster; 10 clusters each


def median_time(w, cfg, kernel, repeats):
    run_dynamics(w, cfg, kernel_module=kernel)  # warm-up
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        centers, iters = run_dynamics(w, cfg, kernel_module=kernel)
        times.append(time.perf_counter() - started)
    times.sort()
    return times[len(times) // 2], len(centers), iters


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    cfg = DynamicsConfig()
    print(f"{'N':>6} {'iters':>6} {'k':>4} {'numpy':>12} {'compiled':>12} {'speedup':>8}")
    for per_cluster in SIZES:
        spec = BlobSpec(clusters=10, points_per_cluster=per_cluster, sigma=1.0,
                        dim=2, center_box=50.0, seed=77, min_center_separation=12.0)
        points, _ = gen_blobs(spec)
        dm = distances_from_points(points)
        w = build_weights(dm, 5.0)
        t_py, k, iters = median_time(w, cfg, _core_py, args.repeats)
        if _core is not None:
            t_c, k_c, iters_c = median_time(w, cfg, _core, args.repeats)
            assert (k_c, iters_c) == (k, iters), "backends disagree"
            print(f"{points.n:>6} {iters:>6} {k:>4} {t_py * 1e3:>10.2f}ms "
                  f"{t_c * 1e3:>10.2f}ms {t_py / t_c:>7.1f}x")
        else:
            print(f"{points.n:>6} {iters:>6} {k:>4} {t_py * 1e3:>10.2f}ms "
                  f"{'n/a':>12} {'n/a':>8}")
    if _core is None:
        print("\ncompiled kernel not available; showing the numpy fallback only")


if __name__ == "__main__":
    main()
