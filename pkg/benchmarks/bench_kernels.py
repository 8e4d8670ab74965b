"""Time the numba-compiled q-series kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--points 2000] [--repeat 5]

The numba column excludes compilation (one warm-up call per kernel).
"""

import argparse
import math
import time

import numpy as np
from numba import njit

from annulus._accel import LOOP_KERNELS, NUMPY_KERNELS


def inputs(n, rng):
    L = math.log(2.0)
    tau = 1j * math.pi / L
    v = rng.uniform(-0.5, 0.5, n) + 1j * rng.uniform(-0.5, 0.5, n)
    z = rng.uniform(-0.5, 0.5, n) + 1j * rng.uniform(-0.2, 0.2, n)
    r = np.sqrt(rng.uniform(1.05, 3.8, n))
    zz = r * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    aa = np.sqrt(rng.uniform(1.05, 3.8, n)) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    return {
        "weierstrass_sums": (v, -2.0 * math.pi**2 / L, 40),
        "theta1_sum": (z, tau, 12),
        "theta1_prod": (z, tau, 12),
        "image_product": (zz, aa, 2.0, 40),
        "divisor_table": (4000, 5, 6),
    }


def best_of(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    data = inputs(args.points, np.random.default_rng(0))

    print(f"{'kernel':<18} {'numpy [ms]':>11} {'numba [ms]':>11} {'speedup':>8} {'max diff':>10}")
    for name, loop in LOOP_KERNELS.items():
        jit = njit(loop)
        a = data[name]
        ref = NUMPY_KERNELS[name](*a)
        got = jit(*a)
        ref = ref if isinstance(ref, tuple) else (ref,)
        got = got if isinstance(got, tuple) else (got,)
        diff = max(float(np.max(np.abs(x - y) / (1.0 + np.abs(x)))) for x, y in zip(ref, got))
        t_np = best_of(NUMPY_KERNELS[name], a, args.repeat)
        t_nb = best_of(jit, a, args.repeat)
        print(f"{name:<18} {1e3 * t_np:11.3f} {1e3 * t_nb:11.3f} {t_np / t_nb:8.1f} {diff:10.2e}")


if __name__ == "__main__":
    main()
