"""Numpy fallback kernels.

The row recurrences for edit distance and global alignment have a serial
left-to-right dependency; it is eliminated with the affine-shift trick:
for a constant per-step cost g, cur[j] = opt(A[j], cur[j-1] + g) becomes a
prefix opt of A[j] - j*g.  The alignment-cost lattice has a varying cell
cost, so it is filled along anti-diagonals instead.
"""

import numpy as np


def levenshtein(a: np.ndarray, b: np.ndarray) -> int:
    """Unit-cost edit distance between two integer sequences."""
    a = np.asarray(a, dtype=np.int32)
    b = np.asarray(b, dtype=np.int32)
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    js = np.arange(1, m + 1)
    prev = np.arange(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        sub = prev[:-1] + (a[i - 1] != b)
        best = np.minimum(prev[1:] + 1, sub)
        shifted = np.concatenate(([i], best - js))
        cur = np.minimum.accumulate(shifted) + np.arange(m + 1)
        prev = cur
    return int(prev[-1])


def nw_score(
    a: np.ndarray, b: np.ndarray, scores: np.ndarray, gap: float
) -> float:
    """Optimal Needleman-Wunsch global alignment score (maximization)."""
    a = np.asarray(a, dtype=np.int32)
    b = np.asarray(b, dtype=np.int32)
    scores = np.asarray(scores, dtype=float)
    n, m = len(a), len(b)
    if n == 0:
        return m * gap
    if m == 0:
        return n * gap
    js = np.arange(1, m + 1)
    prev = np.arange(m + 1, dtype=float) * gap
    for i in range(1, n + 1):
        row = scores[a[i - 1], b]
        best = np.maximum(prev[:-1] + row, prev[1:] + gap)
        shifted = np.concatenate(([i * gap], best - js * gap))
        cur = np.maximum.accumulate(shifted) + np.arange(m + 1) * gap
        prev = cur
    return float(prev[-1])


def align_cost(M: np.ndarray) -> np.ndarray:
    """Cumulative min-cost matrix over the monotone lattice.

    C[i, j] = M[i, j] + min(C[i-1, j], C[i, j-1], C[i-1, j-1]) with
    C[0, 0] = M[0, 0]; filled by anti-diagonals so each wave is vectorized.
    """
    M = np.asarray(M, dtype=float)
    n, m = M.shape
    C = np.empty_like(M)
    C[0, :] = np.cumsum(M[0, :])
    C[:, 0] = np.cumsum(M[:, 0])
    for d in range(2, n + m - 1):
        i0 = max(1, d - (m - 1))
        i1 = min(n - 1, d - 1)
        if i0 > i1:
            continue
        ii = np.arange(i0, i1 + 1)
        jj = d - ii
        best = np.minimum(C[ii - 1, jj], C[ii, jj - 1])
        best = np.minimum(best, C[ii - 1, jj - 1])
        C[ii, jj] = M[ii, jj] + best
    return C
