import math

import numpy as np
import pytest

from gaze3d.core import Fixation, Scanpath, VolumeGeometry
from gaze3d.errors import (
    DimsMismatch,
    EmptyDistribution,
    InvalidSigma,
    NoFixations,
    ZeroVariance,
)
from gaze3d.saliency import (
    KLDIV_EPS,
    FixationVolume,
    ScalarVolume,
    cc,
    fixation_volume,
    kldiv,
    nss,
    render_saliency,
)
from tests.conftest import random_scanpath


def make_sp(points):
    return Scanpath("t", tuple(Fixation(*p) for p in points))


def two_voxel(values):
    return ScalarVolume((2, 1, 1), np.array(values, dtype=float).reshape(2, 1, 1))


def two_voxel_fix(values):
    return FixationVolume((2, 1, 1), np.array(values).reshape(2, 1, 1))


class TestFixationVolume:
    def test_single_fixation_origin(self, geometry):
        fv = fixation_volume(make_sp([(0, 0, 0, 10)]), geometry)
        assert fv.data.sum() == 1
        assert fv.data[0, 0, 0] == 1

    def test_duplicates_collapse(self, geometry):
        sp = make_sp([(0.5, 0.5, 0.5, 10), (0.5, 0.5, 0.5, 20)])
        assert fixation_volume(sp, geometry).data.sum() == 1

    def test_opposite_corners(self):
        g = VolumeGeometry(2, 2, 2, 1.0)
        fv = fixation_volume(make_sp([(0, 0, 0, 10), (1, 1, 1, 10)]), g)
        assert fv.data.sum() == 2
        assert fv.data[0, 0, 0] == 1 and fv.data[1, 1, 1] == 1

    def test_sum_counts_distinct_voxels(self, geometry, rng):
        sp = random_scanpath(rng, 50)
        fv = fixation_volume(sp, geometry)
        idx = set()
        for f in sp.fixations:
            idx.add(
                (
                    round(f.x * (geometry.width_vox - 1)),
                    round(f.y * (geometry.height_vox - 1)),
                    round(f.z * (geometry.depth_vox - 1)),
                )
            )
        assert fv.data.sum() == len(idx)


class TestRenderSaliency:
    def test_rejects_bad_sigma(self, geometry):
        sp = make_sp([(0.5, 0.5, 0.5, 10)])
        with pytest.raises(InvalidSigma):
            render_saliency(sp, geometry, sigma_xy_deg=0.0)

    def test_peak_at_fixation(self, geometry):
        sp = make_sp([(0.25, 0.75, 0.75, 10)])
        vol = render_saliency(sp, geometry)
        peak = np.unravel_index(np.argmax(vol.data), vol.data.shape)
        expected = (
            round(0.25 * (geometry.width_vox - 1)),
            round(0.75 * (geometry.height_vox - 1)),
            round(0.75 * (geometry.depth_vox - 1)),
        )
        assert peak == expected
        # doubling sigma never moves a single-fixation argmax
        wide = render_saliency(sp, geometry, sigma_xy_deg=2.0)
        assert np.unravel_index(np.argmax(wide.data), wide.data.shape) == expected

    def test_duplicate_fixation_matches_single_after_normalization(self, geometry):
        one = render_saliency(make_sp([(0.5, 0.5, 0.5, 10)]), geometry)
        two = render_saliency(
            make_sp([(0.5, 0.5, 0.5, 10), (0.5, 0.5, 0.5, 99)]), geometry
        )
        assert np.allclose(one.data, two.data, atol=1e-9)

    def test_range_and_duration_invariance(self, geometry, rng):
        sp = random_scanpath(rng, 10)
        vol = render_saliency(sp, geometry)
        assert vol.data.min() >= 0 and vol.data.max() <= 1
        scaled = Scanpath(
            sp.id, tuple(Fixation(f.x, f.y, f.z, f.t * 7) for f in sp.fixations)
        )
        assert np.allclose(
            vol.data, render_saliency(scaled, geometry).data, atol=1e-12
        )

    def test_sigma_z_zero_confines_to_slice(self, geometry):
        sp = make_sp([(0.5, 0.5, 0.5, 10)])
        vol = render_saliency(sp, geometry, sigma_z_slices=0.0)
        zc = round(0.5 * (geometry.depth_vox - 1))
        mask = np.ones(geometry.depth_vox, dtype=bool)
        mask[zc] = False
        assert vol.data[:, :, mask].sum() == 0


class TestCC:
    def test_self_correlation(self, geometry, rng):
        vol = render_saliency(random_scanpath(rng, 5), geometry)
        assert cc(vol, vol) == pytest.approx(1.0, abs=1e-9)

    def test_anti_correlation(self, geometry, rng):
        vol = render_saliency(random_scanpath(rng, 5), geometry)
        neg = ScalarVolume(vol.dims, -vol.data + vol.data.max())
        assert cc(vol, neg) == pytest.approx(-1.0, abs=1e-9)

    def test_hand_case_two_voxels(self):
        assert cc(two_voxel([1, 3]), two_voxel([0, 1])) == pytest.approx(1.0)

    def test_symmetry_and_affine_invariance(self, geometry, rng):
        a = render_saliency(random_scanpath(rng, 5), geometry)
        b = render_saliency(random_scanpath(rng, 7, id="b"), geometry)
        assert cc(a, b) == pytest.approx(cc(b, a), abs=1e-12)
        affine = ScalarVolume(b.dims, 3.5 * b.data + 0.25)
        assert cc(a, affine) == pytest.approx(cc(a, b), abs=1e-9)

    def test_zero_variance(self):
        flat = ScalarVolume((2, 1, 1), np.ones((2, 1, 1)))
        with pytest.raises(ZeroVariance):
            cc(flat, two_voxel([0, 1]))

    def test_dims_mismatch(self):
        with pytest.raises(DimsMismatch):
            cc(two_voxel([1, 3]), ScalarVolume((3, 1, 1), np.zeros((3, 1, 1))))


class TestNSS:
    def test_uniform_map_is_one(self):
        flat = ScalarVolume((4, 1, 1), np.full((4, 1, 1), 0.5))
        fv = FixationVolume((4, 1, 1), np.array([0, 1, 0, 0]).reshape(4, 1, 1))
        assert nss(flat, fv, n_fixations=1) == pytest.approx(1.0)

    def test_hand_case_fixation_on_peak(self):
        assert nss(two_voxel([0, 1]), two_voxel_fix([0, 1]), 1) == pytest.approx(1.0)

    def test_hand_case_fixation_off_peak(self):
        assert nss(two_voxel([0, 1]), two_voxel_fix([1, 0]), 1) == pytest.approx(-1.0)

    def test_no_fixations(self):
        with pytest.raises(NoFixations):
            nss(two_voxel([0, 1]), two_voxel_fix([0, 0]))


class TestKLDiv:
    def test_epsilon_constant(self):
        assert KLDIV_EPS == 2.2204e-16

    def test_self_divergence_small(self, geometry, rng):
        fv = fixation_volume(random_scanpath(rng, 20), geometry)
        norm = ScalarVolume(fv.dims, fv.data / fv.data.sum())
        assert abs(kldiv(norm, fv)) <= 1e-6

    def test_uniform_vs_point_mass(self):
        assert kldiv(two_voxel([0.5, 0.5]), two_voxel_fix([0, 1])) == pytest.approx(
            math.log(2), abs=1e-9
        )

    def test_disjoint_mass_large_but_finite(self):
        val = kldiv(two_voxel([1, 0]), two_voxel_fix([0, 1]))
        assert math.isfinite(val)
        assert val > 30  # order log(1/eps) ~ 36

    def test_empty_distribution(self):
        with pytest.raises(EmptyDistribution):
            kldiv(two_voxel([0, 0]), two_voxel_fix([0, 1]))
