"""Volumetric saliency rendering and the CC / NSS / KLDiv metrics.

Volumes are dense float arrays indexed [x, y, z].  The KLDiv epsilon is the
double-precision machine epsilon 2.2204e-16; it guards both the ratio
denominator and the log argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaze3d.core import Scanpath, VolumeGeometry, to_voxel_space
from gaze3d.errors import (
    DimsMismatch,
    EmptyDistribution,
    InvalidSigma,
    NoFixations,
    ZeroVariance,
)

KLDIV_EPS = 2.2204e-16

# Gaussian contributions are truncated at 4 sigma; the omitted tail is
# < 3.4e-4 of peak, below every stated tolerance.
TRUNCATION_SIGMAS = 4.0


@dataclass(frozen=True)
class ScalarVolume:
    """Dense real-valued 3D grid, e.g. a saliency map."""

    dims: tuple[int, int, int]
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=float)
        if arr.shape != tuple(self.dims):
            raise DimsMismatch(f"data shape {arr.shape} != dims {self.dims}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("scalar volume contains non-finite entries")
        object.__setattr__(self, "data", arr)


@dataclass(frozen=True)
class FixationVolume:
    """Dense binary 3D grid marking fixated voxels."""

    dims: tuple[int, int, int]
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.shape != tuple(self.dims):
            raise DimsMismatch(f"data shape {arr.shape} != dims {self.dims}")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("fixation volume entries must be 0 or 1")
        object.__setattr__(self, "data", arr.astype(np.uint8))


def _as_array(v) -> np.ndarray:
    if isinstance(v, (ScalarVolume, FixationVolume)):
        return np.asarray(v.data, dtype=float)
    return np.asarray(v, dtype=float)


def _check_dims(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        raise DimsMismatch(f"volume dims differ: {a.shape} vs {b.shape}")


def fixation_volume(sp: Scanpath, g: VolumeGeometry) -> FixationVolume:
    """Binary volume with a 1 at the voxel nearest each fixation.

    Duplicate fixation voxels collapse to a single 1 (set semantics).
    """
    data = np.zeros(g.dims, dtype=np.uint8)
    vox = to_voxel_space(sp, g)
    idx = np.rint(vox[:, :3]).astype(int)
    idx = np.clip(idx, 0, np.array(g.dims) - 1)
    data[idx[:, 0], idx[:, 1], idx[:, 2]] = 1
    return FixationVolume(g.dims, data)


def render_saliency(
    sp: Scanpath,
    g: VolumeGeometry,
    sigma_xy_deg: float = 1.0,
    sigma_z_slices: float = 1.0,
) -> ScalarVolume:
    """Sum of anisotropic Gaussians at each fixation, rescaled to peak 1.

    In-plane sigma is sigma_xy_deg * pixels_per_degree voxels; the depth
    sigma is given directly in slices.  sigma_z_slices == 0 confines each
    contribution to the fixation's own slice.
    """
    if not (sigma_xy_deg > 0):
        raise InvalidSigma(f"sigma_xy_deg={sigma_xy_deg!r} must be > 0")
    if sigma_z_slices < 0:
        raise InvalidSigma(f"sigma_z_slices={sigma_z_slices!r} must be >= 0")

    W, H, D = g.dims
    sigma_xy = sigma_xy_deg * g.pixels_per_degree
    data = np.zeros((W, H, D), dtype=float)
    vox = to_voxel_space(sp, g)

    rxy = int(math.ceil(TRUNCATION_SIGMAS * sigma_xy))
    rz = int(math.ceil(TRUNCATION_SIGMAS * sigma_z_slices)) if sigma_z_slices > 0 else 0

    for cx, cy, cz, _t in vox:
        x0, x1 = max(0, int(math.floor(cx)) - rxy), min(W, int(math.ceil(cx)) + rxy + 1)
        y0, y1 = max(0, int(math.floor(cy)) - rxy), min(H, int(math.ceil(cy)) + rxy + 1)
        gx = np.exp(-0.5 * ((np.arange(x0, x1) - cx) / sigma_xy) ** 2)
        gy = np.exp(-0.5 * ((np.arange(y0, y1) - cy) / sigma_xy) ** 2)
        if sigma_z_slices > 0:
            z0 = max(0, int(math.floor(cz)) - rz)
            z1 = min(D, int(math.ceil(cz)) + rz + 1)
            gz = np.exp(-0.5 * ((np.arange(z0, z1) - cz) / sigma_z_slices) ** 2)
        else:
            zc = min(max(int(round(cz)), 0), D - 1)
            z0, z1 = zc, zc + 1
            gz = np.ones(1)
        data[x0:x1, y0:y1, z0:z1] += (
            gx[:, None, None] * gy[None, :, None] * gz[None, None, :]
        )

    peak = data.max()
    if peak > 0:
        data /= peak
    return ScalarVolume(g.dims, data)


def cc(s, q) -> float:
    """Pearson linear correlation between two volumes, in [-1, 1]."""
    a, b = _as_array(s), _as_array(q)
    _check_dims(a, b)
    # The per-volume standardization cancels in the final ratio, so only
    # the centered copies are materialized.
    ah = (a - a.mean()).ravel()
    bh = (b - b.mean()).ravel()
    va, vb = np.dot(ah, ah), np.dot(bh, bh)
    if va == 0 or vb == 0:
        raise ZeroVariance("cc requires both volumes to be non-constant")
    return float(np.dot(ah, bh) / math.sqrt(va * vb))


def nss(s, f, n_fixations: int | None = None) -> float:
    """Normalized scanpath saliency of s at the fixated voxels of f.

    The divisor N defaults to the number of fixated voxels; pass the source
    scanpath's fixation count to follow the sequence-length convention when
    duplicates collapsed in f.
    """
    a = _as_array(s)
    fm = f.data if isinstance(f, (ScalarVolume, FixationVolume)) else np.asarray(f)
    _check_dims(a, fm)
    fidx = np.nonzero(fm)
    ones = len(fidx[0])
    if ones == 0:
        raise NoFixations("fixation volume is all zeros")
    n = int(n_fixations) if n_fixations is not None else int(ones)

    # Max-normalize, then standardize.  When the std is nonzero the leading
    # max-normalization cancels, so the normalized map is only evaluated at
    # the fixated voxels instead of being materialized.
    vals = a[fidx]
    mx = a.max()
    sd = a.std()
    if sd != 0:
        vals = (vals - a.mean()) / sd
    elif mx != 0:
        vals = vals / mx
    return float(vals.sum() / n)


def kldiv(s, ref) -> float:
    """Epsilon-regularized KL divergence of s from the reference map.

    Both inputs are normalized to sum 1; the reference may be a binary
    fixation volume or a pre-blurred scalar volume.
    """
    a = _as_array(s)
    gm = _as_array(ref)
    _check_dims(a, gm)
    sa, sg = a.sum(), gm.sum()
    if sa <= 0 or sg <= 0:
        raise EmptyDistribution("kldiv inputs must each have positive total mass")
    gm = gm / sg
    # t = log(eps + gm / (a / sa + eps)), built in place in one buffer.
    t = a / sa
    t += KLDIV_EPS
    np.divide(gm, t, out=t)
    t += KLDIV_EPS
    np.log(t, out=t)
    t *= gm
    return float(t.sum())
