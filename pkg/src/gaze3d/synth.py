"""Synthetic 2D-to-3D gaze conversion for pretraining corpora.

A 2D fixation (x, y, t) on an image plane (origin top-left) becomes the 3D
fixation (1 - x, 0.5, y, t): the width axis is mirrored for the
right-to-left reading pattern, depth is fixed at the center slice, and the
2D vertical coordinate becomes the slice coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaze3d.core import Fixation, Scanpath, VolumeGeometry
from gaze3d.errors import InvariantViolation


@dataclass(frozen=True)
class Fixation2D:
    """Normalized image-plane fixation, origin at the top-left corner."""

    x: float
    y: float
    t: float

    def __post_init__(self):
        for name in ("x", "y"):
            v = getattr(self, name)
            if not math.isfinite(v) or not 0.0 <= v <= 1.0:
                raise InvariantViolation(f"2D fixation {name}={v!r} outside [0,1]")
        if not math.isfinite(self.t) or self.t <= 0.0:
            raise InvariantViolation(f"2D fixation t={self.t!r} must be > 0")


@dataclass(frozen=True)
class JitterParams:
    """Gaussian augmentation noise in degrees of visual angle."""

    sigma_deg: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.sigma_deg < 0:
            raise InvariantViolation("sigma_deg must be >= 0")


def lift_2d_to_3d(fixations: list[Fixation2D], id: str = "") -> Scanpath:
    """Map (x, y, t) -> (1 - x, 0.5, y, t), preserving order and length."""
    return Scanpath(
        id, tuple(Fixation(1.0 - f.x, 0.5, f.y, f.t) for f in fixations)
    )


def jitter(sp: Scanpath, g: VolumeGeometry, p: JitterParams) -> Scanpath:
    """Add seeded Gaussian noise to x and y only, clamped to [0, 1].

    The voxel-space sigma is sigma_deg * pixels_per_degree; z and t are
    untouched.  Output is fully deterministic given the seed (numpy PCG64
    stream, stable across platforms).
    """
    if p.sigma_deg == 0:
        return sp
    rng = np.random.default_rng(p.seed)
    sigma_vox = p.sigma_deg * g.pixels_per_degree
    sx = sigma_vox / (g.width_vox - 1) if g.width_vox > 1 else 0.0
    sy = sigma_vox / (g.height_vox - 1) if g.height_vox > 1 else 0.0
    noise = rng.normal(size=(len(sp), 2))
    out = []
    for f, (nx, ny) in zip(sp.fixations, noise):
        x = min(max(f.x + nx * sx, 0.0), 1.0)
        y = min(max(f.y + ny * sy, 0.0), 1.0)
        out.append(Fixation(x, y, f.z, f.t))
    return Scanpath(sp.id, tuple(out))
