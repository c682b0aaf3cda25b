# cython: boundscheck=False, wraparound=False
"""Compiled hot kernels: exact integer determinants and batched sums.

Twin of _kernels_py with identical signatures and results. Values are Python
ints (arbitrary precision is required); the compiled win is loop and call
overhead, which dominates for the small dense matrices this package uses.
"""
from math import gcd

BACKEND = "cython"


def det_int(rows):
    """Determinant of a square integer matrix by fraction-free elimination."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    if n == 0:
        return 1
    a = [list(r) for r in rows]
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
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            head = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    if sign > 0:
        return a[n - 1][n - 1]
    return -a[n - 1][n - 1]


cdef _cleared_rows(list nums, list dens):
    cdef Py_ssize_t n = len(nums)
    cdef Py_ssize_t r, c
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
        scale = scale * lcm
    return rows, scale


cdef _reduce(p, q):
    if q < 0:
        p, q = -p, -q
    g = gcd(p, q)
    if g > 1:
        p //= g
        q //= g
    return p, q


def det_cols(nums, dens):
    """Determinant of a rational matrix given column-major as (p, q) parts."""
    rows, scale = _cleared_rows(nums, dens)
    return _reduce(det_int(rows), scale)


def dets_cols(batch):
    """det_cols applied to every (nums, dens) matrix in the batch."""
    out = []
    for nums, dens in batch:
        rows, scale = _cleared_rows(nums, dens)
        out.append(_reduce(det_int(rows), scale))
    return out


def det_sum_cols(batch):
    """Exact sum of sign * det over a batch of (sign, nums, dens) matrices."""
    acc_p = 0
    acc_q = 1
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
