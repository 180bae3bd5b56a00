"""Parity between the compiled kernels and the numpy fallback."""

import numpy as np
import pytest

from gaze3d._kernels import (
    BACKEND,
    align_cost_kernel,
    levenshtein_kernel,
    nw_score_kernel,
)
from gaze3d._kernels import _py

try:
    from gaze3d._kernels import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [_py] + ([_ckernels] if _ckernels is not None else [])


def test_active_backend_reported():
    assert BACKEND in ("c", "python")
    if _ckernels is not None:
        assert BACKEND == "c"


@pytest.mark.parametrize("impl", BACKENDS)
class TestParity:
    def test_levenshtein_matches_fallback(self, impl, rng):
        for _ in range(60):
            la, lb = rng.integers(0, 40, size=2)
            a = rng.integers(0, 10, size=la).astype(np.int32)
            b = rng.integers(0, 10, size=lb).astype(np.int32)
            assert impl.levenshtein(a, b) == _py.levenshtein(a, b)

    def test_nw_score_matches_fallback(self, impl, rng):
        scores = rng.uniform(size=(10, 10))
        scores = (scores + scores.T) / 2
        for gap in (0.0, -1.5, 2.0):
            for _ in range(30):
                la, lb = rng.integers(0, 30, size=2)
                a = rng.integers(0, 10, size=la).astype(np.int32)
                b = rng.integers(0, 10, size=lb).astype(np.int32)
                got = impl.nw_score(a, b, scores, gap)
                want = _py.nw_score(a, b, scores, gap)
                assert got == pytest.approx(want, abs=1e-9)

    def test_align_cost_matches_fallback(self, impl, rng):
        for _ in range(30):
            n, m = rng.integers(1, 25, size=2)
            M = rng.uniform(size=(n, m))
            assert np.allclose(impl.align_cost(M), _py.align_cost(M), atol=1e-9)


class TestDispatchedKernels:
    def test_exports_callable(self, rng):
        a = rng.integers(0, 5, size=8).astype(np.int32)
        b = rng.integers(0, 5, size=6).astype(np.int32)
        assert levenshtein_kernel(a, a) == 0
        scores = np.eye(5)
        assert nw_score_kernel(a, b, scores, 0.0) >= 0.0
        C = align_cost_kernel(rng.uniform(size=(4, 5)))
        assert C.shape == (4, 5)
