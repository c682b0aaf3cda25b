"""Compare the pure-Python and Cython determinant kernels.

Two workloads, both shaped like the verification hot path: single signed
determinants over cleared integer columns, and the signed determinant sum
over a whole batch. Matrices carry small rational entries with mixed
denominators, the same texture the subdivision labelings produce.

Run:  python3 benchmarks/bench_kernels.py [--trials 5]
"""
from __future__ import annotations

import argparse
import time
from random import Random

from fairslice import _kernels_py

try:
    from fairslice import _kernels_cy
except ImportError:
    _kernels_cy = None


def make_batch(n: int, count: int, rng: Random):
    """Signed column batches: [(sign, nums, dens)], column-major."""
    batch = []
    for _ in range(count):
        sign = rng.choice((1, -1))
        nums = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        dens = [[rng.randint(1, 9) for _ in range(n)] for _ in range(n)]
        batch.append((sign, nums, dens))
    return batch


def time_call(fn, *args, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=3, help="repeats per timing (best is kept)")
    parser.add_argument("--count", type=int, default=4000, help="matrices per batch")
    args = parser.parse_args()

    if _kernels_cy is None:
        print("compiled kernel unavailable; only the pure backend will run")

    rng = Random(20260817)
    header = f"{'workload':<26} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in (3, 4, 5, 6):
        batch = make_batch(n, args.count, rng)
        plain = [(nums, dens) for _, nums, dens in batch]

        t_py = time_call(_kernels_py.dets_cols, plain, repeats=args.trials)
        t_cy = (
            time_call(_kernels_cy.dets_cols, plain, repeats=args.trials)
            if _kernels_cy
            else None
        )
        label = f"dets n={n} x{args.count}"
        speed = f"{t_py / t_cy:7.2f}x" if t_cy else "     n/a"
        t_cy_s = f"{t_cy:11.4f}" if t_cy else "        n/a"
        print(f"{label:<26} {t_py:10.4f} {t_cy_s} {speed}")

        t_py = time_call(_kernels_py.det_sum_cols, batch, repeats=args.trials)
        t_cy = (
            time_call(_kernels_cy.det_sum_cols, batch, repeats=args.trials)
            if _kernels_cy
            else None
        )
        label = f"det sum n={n} x{args.count}"
        speed = f"{t_py / t_cy:7.2f}x" if t_cy else "     n/a"
        t_cy_s = f"{t_cy:11.4f}" if t_cy else "        n/a"
        print(f"{label:<26} {t_py:10.4f} {t_cy_s} {speed}")

    if _kernels_cy:
        check = make_batch(4, 200, Random(7))
        assert _kernels_py.det_sum_cols(check) == _kernels_cy.det_sum_cols(check)
        print("\nbackends agree on a shared batch")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
