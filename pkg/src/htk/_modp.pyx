# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels: dense matrix product and row reduction.

All inputs are int64 arrays with entries in [0, p) and p < 2**31, so a
single product fits in 62 bits and an accumulator plus one product never
overflows a signed 64-bit integer.
"""

import numpy as np

from libc.stdint cimport int64_t


cdef inline int64_t _inverse(int64_t a, int64_t p):
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def matmul_modp(a, b, int64_t p):
    cdef const int64_t[:, ::1] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef const int64_t[:, ::1] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = A.shape[0], k = A.shape[1], m = B.shape[1]
    if B.shape[0] != k:
        raise ValueError("inner dimensions differ")
    out = np.zeros((n, m), dtype=np.int64)
    cdef int64_t[:, ::1] C = out
    cdef Py_ssize_t i, t, j
    cdef int64_t x
    cdef int64_t sq = (p - 1) * (p - 1)
    # number of unreduced accumulations a row can take safely
    cdef int64_t budget = (9223372036854775807 - p) // sq if sq > 0 else 1
    cdef int64_t used
    for i in range(n):
        used = 0
        for t in range(k):
            x = A[i, t]
            if x == 0:
                continue
            for j in range(m):
                C[i, j] += x * B[t, j]
            used += 1
            if used >= budget:
                for j in range(m):
                    C[i, j] %= p
                used = 0
        for j in range(m):
            C[i, j] %= p
    return out


def rref_modp(a, int64_t p):
    """Reduced row echelon form of ``a`` over F_p; returns (R, pivot columns)."""
    out = np.array(a, dtype=np.int64, order="C", copy=True) % p
    cdef int64_t[:, ::1] M = out
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = tmp
        inv = _inverse(M[r, c], p)
        for j in range(c, cols):
            M[r, j] = (M[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = M[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, cols):
                M[i, j] = (M[i, j] + f * M[r, j]) % p
        pivots.append(c)
        r += 1
    return out, tuple(pivots)
