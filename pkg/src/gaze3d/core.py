"""Domain types and coordinate conventions shared by every metric.

Scanpaths store normalized [0,1] coordinates; every metric converts to voxel
space at use time via ``to_voxel_space`` so one scanpath can be evaluated
against any volume resolution.  The convention is cell-centered and
0-indexed: normalized x maps to voxel coordinate x * (W - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from gaze3d.errors import InvariantViolation, ScanpathTooShort


@dataclass(frozen=True)
class Fixation:
    """A gaze dwell at a normalized 3D location for t milliseconds."""

    x: float
    y: float
    z: float
    t: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v) or not 0.0 <= v <= 1.0:
                raise InvariantViolation(f"fixation {name}={v!r} outside [0,1]")
        if not math.isfinite(self.t) or self.t <= 0.0:
            raise InvariantViolation(f"fixation t={self.t!r} must be finite and > 0")


@dataclass(frozen=True)
class Scanpath:
    """Ordered fixation sequence for one reading session."""

    id: str
    fixations: tuple[Fixation, ...]

    def __post_init__(self):
        fx = tuple(self.fixations)
        if len(fx) < 1:
            raise InvariantViolation("scanpath must contain at least one fixation")
        object.__setattr__(self, "fixations", fx)

    def __len__(self) -> int:
        return len(self.fixations)

    @property
    def total_duration(self) -> float:
        return float(sum(f.t for f in self.fixations))


@dataclass(frozen=True)
class VolumeGeometry:
    """Voxel dimensions plus in-plane voxels-per-degree of visual angle."""

    width_vox: int
    height_vox: int
    depth_vox: int
    pixels_per_degree: float

    def __post_init__(self):
        for name in ("width_vox", "height_vox", "depth_vox"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise InvariantViolation(f"{name}={v!r} must be a positive integer")
        if not math.isfinite(self.pixels_per_degree) or self.pixels_per_degree <= 0:
            raise InvariantViolation("pixels_per_degree must be > 0")

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.width_vox, self.height_vox, self.depth_vox)


@dataclass(frozen=True)
class Saccade:
    """Displacement between two consecutive fixations, in voxel units."""

    dx: float
    dy: float
    dz: float
    source_index: int
    target_index: int
    amplitude: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "amplitude", math.sqrt(self.dx**2 + self.dy**2 + self.dz**2)
        )

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz], dtype=float)


def diagonal(g: VolumeGeometry) -> float:
    """Volume diagonal sqrt(W^2 + H^2 + D^2), the spatial normalizer."""
    return math.sqrt(g.width_vox**2 + g.height_vox**2 + g.depth_vox**2)


def to_voxel_space(sp: Scanpath, g: VolumeGeometry) -> np.ndarray:
    """Convert a scanpath to an (N, 4) array of (vx, vy, vz, t) rows.

    vx = x * (W - 1) and likewise for y, z; durations pass through unchanged.
    """
    out = np.empty((len(sp), 4), dtype=float)
    sx, sy, sz = g.width_vox - 1, g.height_vox - 1, g.depth_vox - 1
    for i, f in enumerate(sp.fixations):
        out[i, 0] = f.x * sx
        out[i, 1] = f.y * sy
        out[i, 2] = f.z * sz
        out[i, 3] = f.t
    return out


def saccades(sp: Scanpath, g: VolumeGeometry) -> list[Saccade]:
    """The N-1 voxel-space displacement vectors between consecutive fixations."""
    if len(sp) < 2:
        raise ScanpathTooShort(
            f"need >= 2 fixations for saccades, got {len(sp)}"
        )
    vox = to_voxel_space(sp, g)
    out = []
    for i in range(len(sp) - 1):
        d = vox[i + 1, :3] - vox[i, :3]
        out.append(Saccade(d[0], d[1], d[2], source_index=i, target_index=i + 1))
    return out


def saccade_vectors(sp: Scanpath, g: VolumeGeometry) -> np.ndarray:
    """(N-1, 3) array of voxel-space saccade displacement vectors."""
    if len(sp) < 2:
        raise ScanpathTooShort(
            f"need >= 2 fixations for saccades, got {len(sp)}"
        )
    vox = to_voxel_space(sp, g)
    return np.diff(vox[:, :3], axis=0)
