#!/usr/bin/env python3
"""Compare the numba and pure-numpy Monte Carlo kernels.

Usage: python3 benchmarks/bench_kernels.py [-n 1000000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from internodal._accel import HAVE_NUMBA
from internodal.core import make_config
from internodal.montecarlo import pair_distances
from internodal.spatial import waypoint_samples


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])

    def cases(n):
        return {
            "pairs 2d/s3": lambda b: pair_distances(make_config(2, "s3", 1, 2), n, 1, backend=b),
            "pairs 3d/s3": lambda b: pair_distances(make_config(3, "s3", 1, 2), n, 1, backend=b),
            "waypoint 2d": lambda b: waypoint_samples(2, 1.0, n // 4, 1, backend=b),
        }

    # warm-up with tiny inputs so JIT compile time is excluded
    for fn in cases(64).values():
        for b in backends:
            fn(b)

    print(f"{'case':<14} {'backend':<7} {'seconds':>9} {'Msamples/s':>11}  max|diff| vs numpy")
    for name, fn in cases(args.n).items():
        ref = None
        for b in backends:
            t, out = best_of(lambda: fn(b), args.repeat)
            n = out.shape[0]
            diff = "" if ref is None else f"{np.max(np.abs(out - ref)):.1e}"
            ref = out if ref is None else ref
            print(f"{name:<14} {b:<7} {t:>9.3f} {n / t / 1e6:>11.2f}  {diff}")


if __name__ == "__main__":
    main()
