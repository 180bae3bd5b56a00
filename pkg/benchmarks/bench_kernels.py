"""Timing comparison of the compiled DP kernels against the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from gaze3d._kernels import _py

try:
    from gaze3d._kernels import _ckernels
except ImportError:
    _ckernels = None


def bench(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    sizes = (100, 500, 2000)
    scores = rng.uniform(size=(256, 256))
    scores = (scores + scores.T) / 2

    rows = []
    for n in sizes:
        a = rng.integers(0, 256, size=n).astype(np.int32)
        b = rng.integers(0, 256, size=n).astype(np.int32)
        M = rng.uniform(size=(n, n))
        cases = [
            ("levenshtein", lambda impl: impl.levenshtein(a, b)),
            ("nw_score", lambda impl: impl.nw_score(a, b, scores, 0.0)),
            ("align_cost", lambda impl: impl.align_cost(M)),
        ]
        for name, call in cases:
            t_py = bench(call, _py)
            t_c = bench(call, _ckernels) if _ckernels is not None else None
            rows.append((name, n, t_py, t_c))

    print(f"{'kernel':<12} {'n':>6} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for name, n, t_py, t_c in rows:
        if t_c is None:
            print(f"{name:<12} {n:>6} {t_py*1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
        else:
            print(
                f"{name:<12} {n:>6} {t_py*1e3:>8.2f}ms {t_c*1e3:>8.2f}ms "
                f"{t_py/t_c:>7.1f}x"
            )
    if _ckernels is None:
        print("\ncompiled extension not available; numpy fallback only")


if __name__ == "__main__":
    main()
