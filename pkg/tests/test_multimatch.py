import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaze3d.core import (
    Fixation,
    Scanpath,
    VolumeGeometry,
    diagonal,
    saccade_vectors,
)
from gaze3d.errors import InvariantViolation, ScanpathTooShort
from gaze3d.multimatch import (
    Alignment,
    SimplifyParams,
    align,
    mm_scores,
    simplify,
)
from tests.conftest import random_scanpath


def make_sp(points):
    return Scanpath("t", tuple(Fixation(*p) for p in points))


def brute_force_min_path_cost(M):
    """Enumerate every monotone lattice path and return the minimum cost."""
    n, m = M.shape
    best = [math.inf]

    def go(i, j, acc):
        if (i, j) == (n - 1, m - 1):
            best[0] = min(best[0], acc)
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            ni, nj = i + di, j + dj
            if ni < n and nj < m:
                go(ni, nj, acc + M[ni, nj])

    go(0, 0, M[0, 0])
    return best[0]


def alignment_cost(alignment, M):
    return sum(M[i, j] for i, j in alignment.pairs)


class TestSimplifyParams:
    def test_rejects_bad_thresholds(self):
        with pytest.raises(InvariantViolation):
            SimplifyParams(angle_threshold_deg=0)
        with pytest.raises(InvariantViolation):
            SimplifyParams(amplitude_threshold_fraction=1.5)


class TestSimplify:
    def test_too_short(self, geometry):
        with pytest.raises(ScanpathTooShort):
            simplify(make_sp([(0.5, 0.5, 0.5, 10)]), geometry)

    def test_collinear_fixation_removed(self, geometry):
        sp = make_sp(
            [
                (0.0, 0.0, 0.0, 100),
                (0.2, 0.0, 0.0, 50),
                (0.4, 0.0, 0.0, 60),
                (1.0, 1.0, 1.0, 70),
            ]
        )
        out = simplify(sp, geometry)
        assert len(out) < len(sp)
        # folded duration lands on the predecessor
        assert out.fixations[0].t > 100
        assert out.total_duration == pytest.approx(sp.total_duration)

    def test_sharp_long_saccades_untouched(self, geometry):
        # consecutive saccades turn by >= 90 degrees, each far above the
        # amplitude threshold
        sp = make_sp(
            [
                (0.0, 0.0, 0.0, 10),
                (0.9, 0.0, 0.0, 10),
                (0.9, 0.9, 0.0, 10),
                (0.0, 0.9, 0.0, 10),
            ]
        )
        assert simplify(sp, geometry) == sp

    def test_duration_ceiling_blocks_merge(self, geometry):
        sp = make_sp(
            [
                (0.0, 0.0, 0.0, 100),
                (0.2, 0.0, 0.0, 900),
                (0.4, 0.0, 0.0, 60),
                (1.0, 1.0, 1.0, 70),
            ]
        )
        p = SimplifyParams(duration_ceiling_ms=500.0)
        out = simplify(sp, geometry, p)
        assert any(f.t == 900 for f in out.fixations)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**31), n=st.integers(2, 60))
    def test_idempotent_and_conservative(self, seed, n):
        g = VolumeGeometry(64, 64, 32, 4.0)
        sp = random_scanpath(np.random.default_rng(seed), n, walk=True)
        once = simplify(sp, g)
        assert simplify(once, g) == once
        assert once.total_duration == pytest.approx(sp.total_duration, abs=1e-9)
        assert once.fixations[0].x == sp.fixations[0].x
        first, last = once.fixations[0], once.fixations[-1]
        sfirst, slast = sp.fixations[0], sp.fixations[-1]
        assert (first.x, first.y, first.z) == (sfirst.x, sfirst.y, sfirst.z)
        assert (last.x, last.y, last.z) == (slast.x, slast.y, slast.z)


class TestAlign:
    def test_identical_paths_diagonal(self, geometry, rng):
        sp = random_scanpath(rng, 10)
        alignment = align(sp, sp, geometry)
        assert alignment.pairs == tuple((i, i) for i in range(9))

    def test_single_saccade_pair(self, geometry, rng):
        a = random_scanpath(rng, 2)
        b = random_scanpath(rng, 2, id="b")
        assert align(a, b, geometry).pairs == ((0, 0),)

    def test_monotone_contract(self, geometry, rng):
        a = random_scanpath(rng, 8)
        b = random_scanpath(rng, 12, id="b")
        pairs = align(a, b, geometry).pairs
        assert pairs[0] == (0, 0)
        assert pairs[-1] == (6, 10)
        for (i0, j0), (i1, j1) in zip(pairs, pairs[1:]):
            assert (i1 - i0, j1 - j0) in {(1, 0), (0, 1), (1, 1)}

    def test_oracle_brute_force_cost(self, geometry, rng):
        for _ in range(40):
            na = int(rng.integers(2, 7))
            nb = int(rng.integers(2, 7))
            a = random_scanpath(rng, na)
            b = random_scanpath(rng, nb, id="b")
            ua = saccade_vectors(a, geometry)
            vb = saccade_vectors(b, geometry)
            M = np.linalg.norm(ua[:, None, :] - vb[None, :, :], axis=2)
            got = alignment_cost(align(a, b, geometry), M)
            want = brute_force_min_path_cost(M)
            assert got == pytest.approx(want, abs=1e-9)


class TestMMScores:
    def test_self_similarity(self, geometry, rng):
        sp = random_scanpath(rng, 25)
        scores = mm_scores(sp, sp, geometry)
        for v in scores.as_dict().values():
            assert v == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal_unit_saccades(self):
        g = VolumeGeometry(11, 11, 11, 1.0)
        L = 5.0  # voxel length along each axis
        a = make_sp([(0.0, 0.0, 0.0, 100), (0.5, 0.0, 0.0, 100)])
        b = make_sp([(0.0, 0.0, 0.0, 100), (0.0, 0.5, 0.0, 100)])
        delta = diagonal(g)
        scores = mm_scores(a, b, g)
        assert scores.direction == pytest.approx(0.5, abs=1e-9)
        assert scores.length == pytest.approx(1.0, abs=1e-9)
        assert scores.duration == pytest.approx(1.0, abs=1e-9)
        assert scores.vector == pytest.approx(1 - L * math.sqrt(2) / delta, abs=1e-9)
        assert scores.position == pytest.approx(
            1 - (0 + L * math.sqrt(2)) / 2 / delta, abs=1e-9
        )

    def test_range_and_symmetry(self, geometry, rng):
        for _ in range(50):
            a = random_scanpath(rng, int(rng.integers(2, 30)))
            b = random_scanpath(rng, int(rng.integers(2, 30)), id="b")
            ab = mm_scores(a, b, geometry)
            ba = mm_scores(b, a, geometry)
            for k, v in ab.as_dict().items():
                assert 0.0 <= v <= 1.0
                assert v == pytest.approx(ba.as_dict()[k], abs=1e-9)

    def test_direction_scale_invariance(self, geometry):
        a = make_sp([(0.1, 0.1, 0.1, 10), (0.3, 0.2, 0.1, 10), (0.2, 0.5, 0.3, 10)])
        shrunk = make_sp(
            [(0.1, 0.1, 0.1, 10), (0.2, 0.15, 0.1, 10), (0.15, 0.3, 0.2, 10)]
        )
        b = make_sp([(0.5, 0.5, 0.5, 10), (0.1, 0.9, 0.3, 10), (0.9, 0.1, 0.8, 10)])
        d1 = mm_scores(a, b, geometry).direction
        d2 = mm_scores(shrunk, b, geometry).direction
        assert d1 == pytest.approx(d2, abs=1e-9)

    def test_too_short(self, geometry):
        with pytest.raises(ScanpathTooShort):
            mm_scores(make_sp([(0.5, 0.5, 0.5, 10)]), make_sp([(0.5, 0.5, 0.5, 10)]), geometry)
