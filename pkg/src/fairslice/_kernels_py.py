"""Pure-Python hot kernels: exact integer determinants and batched sums.

All arithmetic is on Python ints, so results stay exact at any magnitude.
Column data arrives as parallel numerator/denominator matrices indexed
[column][row]; denominators are cleared per column so Bareiss elimination
stays integral.
"""
from __future__ import annotations

from math import gcd

BACKEND = "python"


def det_int(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            head = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _cleared_rows(nums: list[list[int]], dens: list[list[int]]) -> tuple[list[list[int]], int]:
    # Scale each column to integers; the determinant gains the product of scales.
    n = len(nums)
    rows = [[0] * n for _ in range(n)]
    scale = 1
    for c in range(n):
        col_n = nums[c]
        col_d = dens[c]
        lcm = 1
        for d in col_d:
            lcm = lcm // gcd(lcm, d) * d
        for r in range(n):
            rows[r][c] = col_n[r] * (lcm // col_d[r])
        scale *= lcm
    return rows, scale


def _reduce(p: int, q: int) -> tuple[int, int]:
    if q < 0:
        p, q = -p, -q
    g = gcd(p, q)
    if g > 1:
        p //= g
        q //= g
    return p, q


def det_cols(nums: list[list[int]], dens: list[list[int]]) -> tuple[int, int]:
    """Determinant of a rational matrix given column-major as (p, q) parts.

    Returns the value as a reduced (numerator, denominator) pair, denominator
    positive.
    """
    rows, scale = _cleared_rows(nums, dens)
    return _reduce(det_int(rows), scale)


def dets_cols(batch: list[tuple[list[list[int]], list[list[int]]]]) -> list[tuple[int, int]]:
    """det_cols applied to every (nums, dens) matrix in the batch."""
    return [det_cols(nums, dens) for nums, dens in batch]


def det_sum_cols(batch: list[tuple[int, list[list[int]], list[list[int]]]]) -> tuple[int, int]:
    """Exact sum of sign * det over a batch of (sign, nums, dens) matrices."""
    acc_p, acc_q = 0, 1
    for sign, nums, dens in batch:
        rows, scale = _cleared_rows(nums, dens)
        p = sign * det_int(rows)
        q = scale
        g = gcd(acc_q, q)
        qg = q // g
        acc_p = acc_p * qg + p * (acc_q // g)
        acc_q = acc_q * qg
        acc_p, acc_q = _reduce(acc_p, acc_q)
    return acc_p, acc_q
