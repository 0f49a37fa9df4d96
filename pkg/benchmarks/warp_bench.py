#!/usr/bin/env python3
"""Benchmark the piecewise-warp hot kernels: numba @njit vs pure numpy.

The two backends are bit-identical by construction (verified here as well);
this script measures how much the JIT buys on batch morphing workloads.

Usage:
    python benchmarks/warp_bench.py [--sizes 128,256,512] [--repeats 5]
"""

from __future__ import annotations

import argparse
import os
import statistics
import time

import numpy as np


def make_case(size: int, seed: int):
    from morphforge.morph import MorphParams
    from morphforge.synthface import make_face

    img_a, lm_a = make_face(seed, size=size)
    img_b, lm_b = make_face(seed + 1, size=size)
    return img_a, lm_a, img_b, lm_b, MorphParams(0.5, 0.5, seed)


def run_backend(backend: str, size: int, repeats: int) -> tuple[list[float], np.ndarray]:
    os.environ["MORPHFORGE_BACKEND"] = backend
    from morphforge.morph import morph

    img_a, lm_a, img_b, lm_b, params = make_case(size, 7)
    out, _ = morph(img_a, lm_a, img_b, lm_b, params)  # warmup / JIT compile
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        out, _ = morph(img_a, lm_a, img_b, lm_b, params)
        times.append(time.perf_counter() - start)
    return times, out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="128,256,512", help="comma-separated image sizes")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'size':>6} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9} {'identical':>10}")
    for size in sizes:
        numpy_times, numpy_out = run_backend("numpy", size, args.repeats)
        numba_times, numba_out = run_backend("numba", size, args.repeats)
        identical = np.array_equal(numpy_out, numba_out)
        t_np = statistics.median(numpy_times) * 1e3
        t_nb = statistics.median(numba_times) * 1e3
        print(f"{size:>6} {t_np:>12.2f} {t_nb:>12.2f} {t_np / t_nb:>8.2f}x {str(identical):>10}")
        if not identical:
            print("backend outputs diverged; this is a bug")
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
