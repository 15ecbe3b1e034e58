#!/usr/bin/env python3
"""Benchmark the modular elimination kernel: numba vs pure numpy.

Run: python benchmarks/bench_kernels.py [--sizes 100 200 400] [--prime P]
The same kernels back `trihom.exactla.modular_rank`; AK_KERNELS selects
the production path.
"""

import argparse
import time

import numpy as np

from trihom import _kernels


def bench(fn, a, p, repeats=5):
    best = float("inf")
    result = None
    for _ in range(repeats):
        work = a.copy()
        t0 = time.perf_counter()
        result = fn(work, p)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    ap.add_argument("--prime", type=int, default=2147483629)  # < 2**31
    ap.add_argument("--density", type=float, default=0.2)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    print(f"numba available: {_kernels.HAVE_NUMBA}; active mode: {_kernels.kernel_mode()}")
    if _kernels.HAVE_NUMBA:
        warm = rng.integers(-5, 5, size=(8, 8)).astype(np.int64)
        _kernels.rank_mod_p_numba(warm, args.prime)  # JIT warmup outside timing

    header = f"{'n':>6} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9} {'rank':>6}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        a = rng.integers(-9, 9, size=(n, n)).astype(np.int64)
        mask = rng.random((n, n)) < args.density
        a *= mask
        r_np, t_np = bench(_kernels.rank_mod_p_numpy, a, args.prime)
        if _kernels.HAVE_NUMBA:
            r_nb, t_nb = bench(_kernels.rank_mod_p_numba, a, args.prime)
            assert r_np == r_nb, (r_np, r_nb)
            print(f"{n:>6} {t_np:>12.5f} {t_nb:>12.5f} {t_np / t_nb:>8.1f}x {r_np:>6}")
        else:
            print(f"{n:>6} {t_np:>12.5f} {'n/a':>12} {'n/a':>9} {r_np:>6}")


if __name__ == "__main__":
    main()
