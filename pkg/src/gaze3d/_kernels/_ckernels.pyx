# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dynamic-programming kernels (edit distance, global alignment,
monotone lattice min-cost)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def levenshtein(a, b):
    """Unit-cost edit distance between two integer sequences."""
    cdef cnp.int32_t[::1] av = np.ascontiguousarray(a, dtype=np.int32)
    cdef cnp.int32_t[::1] bv = np.ascontiguousarray(b, dtype=np.int32)
    cdef Py_ssize_t n = av.shape[0], m = bv.shape[0]
    if n == 0:
        return m
    if m == 0:
        return n
    cdef cnp.int64_t[::1] prev = np.arange(m + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] cur = np.empty(m + 1, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef cnp.int64_t sub, dele, ins, best
    for i in range(1, n + 1):
        cur[0] = i
        for j in range(1, m + 1):
            sub = prev[j - 1] + (av[i - 1] != bv[j - 1])
            dele = prev[j] + 1
            ins = cur[j - 1] + 1
            best = sub
            if dele < best:
                best = dele
            if ins < best:
                best = ins
            cur[j] = best
        prev, cur = cur, prev
    return int(prev[m])


def nw_score(a, b, scores, double gap):
    """Optimal Needleman-Wunsch global alignment score (maximization)."""
    cdef cnp.int32_t[::1] av = np.ascontiguousarray(a, dtype=np.int32)
    cdef cnp.int32_t[::1] bv = np.ascontiguousarray(b, dtype=np.int32)
    cdef double[:, ::1] sm = np.ascontiguousarray(scores, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0], m = bv.shape[0]
    if n == 0:
        return m * gap
    if m == 0:
        return n * gap
    cdef double[::1] prev = np.arange(m + 1, dtype=np.float64) * gap
    cdef double[::1] cur = np.empty(m + 1, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double diag, up, left, best
    for i in range(1, n + 1):
        cur[0] = i * gap
        for j in range(1, m + 1):
            diag = prev[j - 1] + sm[av[i - 1], bv[j - 1]]
            up = prev[j] + gap
            left = cur[j - 1] + gap
            best = diag
            if up > best:
                best = up
            if left > best:
                best = left
            cur[j] = best
        prev, cur = cur, prev
    return float(prev[m])


def align_cost(M):
    """Cumulative min-cost matrix over the monotone lattice."""
    cdef double[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef Py_ssize_t n = Mv.shape[0], m = Mv.shape[1]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] C = out
    cdef Py_ssize_t i, j
    cdef double best, c
    C[0, 0] = Mv[0, 0]
    for j in range(1, m):
        C[0, j] = C[0, j - 1] + Mv[0, j]
    for i in range(1, n):
        C[i, 0] = C[i - 1, 0] + Mv[i, 0]
        for j in range(1, m):
            best = C[i - 1, j - 1]
            c = C[i - 1, j]
            if c < best:
                best = c
            c = C[i, j - 1]
            if c < best:
                best = c
            C[i, j] = Mv[i, j] + best
    return out
