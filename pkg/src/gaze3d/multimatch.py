"""Scanpath simplification, saccade-level temporal alignment, and the five
MultiMatch similarity dimensions.

The alignment lattice is a DAG with nonnegative edge weights, so the
shortest path is computed by a cumulative-cost sweep (identical result to
running Dijkstra on the same graph) with the compiled kernel doing the
O(n*m) fill.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaze3d._kernels import align_cost_kernel
from gaze3d.core import (
    Fixation,
    Scanpath,
    VolumeGeometry,
    diagonal,
    saccade_vectors,
    to_voxel_space,
)
from gaze3d.errors import InvariantViolation, ScanpathTooShort

DEFAULT_ANGLE_THRESHOLD_DEG = 45.0
DEFAULT_AMPLITUDE_THRESHOLD_FRACTION = 0.10


@dataclass(frozen=True)
class SimplifyParams:
    """Thresholds for the direction / amplitude merge passes."""

    angle_threshold_deg: float = DEFAULT_ANGLE_THRESHOLD_DEG
    amplitude_threshold_fraction: float = DEFAULT_AMPLITUDE_THRESHOLD_FRACTION
    duration_ceiling_ms: float | None = None

    def __post_init__(self):
        if not 0.0 < self.angle_threshold_deg < 180.0:
            raise InvariantViolation("angle_threshold_deg must be in (0, 180)")
        if not 0.0 < self.amplitude_threshold_fraction <= 1.0:
            raise InvariantViolation(
                "amplitude_threshold_fraction must be in (0, 1]"
            )


@dataclass(frozen=True)
class Alignment:
    """Monotone pairing of saccade indices between two scanpaths."""

    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MultiMatchScores:
    vector: float
    direction: float
    length: float
    position: float
    duration: float

    def as_dict(self) -> dict[str, float]:
        return {
            "vector": self.vector,
            "direction": self.direction,
            "length": self.length,
            "position": self.position,
            "duration": self.duration,
        }

    @property
    def shape_average(self) -> float:
        """Mean of the four spatial dimensions (duration excluded)."""
        return (self.vector + self.direction + self.length + self.position) / 4.0


def _angle_between(u, v) -> float:
    """Inter-vector angle in radians, 0 when either vector is zero."""
    nu = math.sqrt(u[0] ** 2 + u[1] ** 2 + u[2] ** 2)
    nv = math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    c = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / (nu * nv)
    return math.acos(min(1.0, max(-1.0, c)))


def _merge_pass(fx, vox_scale, threshold_fn, ceiling):
    """One greedy left-to-right merge sweep; returns True if anything merged.

    fx is a mutable list of [x, y, z, t]; merging removes the fixation
    shared by the two saccades and adds its duration to its predecessor.
    """
    sx, sy, sz = vox_scale
    changed = False
    i = 0
    while i + 2 < len(fx):
        a, b, c = fx[i], fx[i + 1], fx[i + 2]
        u = ((b[0] - a[0]) * sx, (b[1] - a[1]) * sy, (b[2] - a[2]) * sz)
        v = ((c[0] - b[0]) * sx, (c[1] - b[1]) * sy, (c[2] - b[2]) * sz)
        if threshold_fn(u, v) and (ceiling is None or b[3] <= ceiling):
            a[3] += b[3]
            del fx[i + 1]
            changed = True
        else:
            i += 1
    return changed


def simplify(
    sp: Scanpath, g: VolumeGeometry, p: SimplifyParams | None = None
) -> Scanpath:
    """Iteratively merge directionally similar or short consecutive saccades.

    Two passes run to a joint fixpoint: a direction pass merging saccade
    pairs whose 3D inter-vector angle is below the threshold, and an
    amplitude pass merging pairs that are both shorter than the threshold
    fraction of the volume diagonal.  Total duration is conserved exactly
    and the first and last fixation positions are preserved.
    """
    if len(sp) < 2:
        raise ScanpathTooShort(f"need >= 2 fixations to simplify, got {len(sp)}")
    if p is None:
        p = SimplifyParams()

    angle_thresh = math.radians(p.angle_threshold_deg)
    amp_thresh = p.amplitude_threshold_fraction * diagonal(g)
    vox_scale = np.array(
        [g.width_vox - 1, g.height_vox - 1, g.depth_vox - 1], dtype=float
    )

    def by_direction(u, v):
        return _angle_between(u, v) < angle_thresh

    def by_amplitude(u, v):
        return (
            math.sqrt(u[0] ** 2 + u[1] ** 2 + u[2] ** 2) < amp_thresh
            and math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2) < amp_thresh
        )

    fx = [[f.x, f.y, f.z, f.t] for f in sp.fixations]
    while True:
        changed = _merge_pass(fx, vox_scale, by_direction, p.duration_ceiling_ms)
        changed |= _merge_pass(fx, vox_scale, by_amplitude, p.duration_ceiling_ms)
        if not changed:
            break

    return Scanpath(sp.id, tuple(Fixation(*row) for row in fx))


def align(sp_a: Scanpath, sp_b: Scanpath, g: VolumeGeometry) -> Alignment:
    """Minimum-cost monotone pairing of the two saccade sequences.

    Lattice node (i, j) carries the Euclidean distance between saccade
    vectors i and j; moves are (i+1, j), (i, j+1), (i+1, j+1) and a path's
    cost is the sum of visited node costs including the origin.
    """
    ua = saccade_vectors(sp_a, g)
    vb = saccade_vectors(sp_b, g)
    diff = ua[:, None, :] - vb[None, :, :]
    M = np.sqrt((diff**2).sum(axis=2))
    C = align_cost_kernel(M)

    n, m = M.shape
    pairs = [(n - 1, m - 1)]
    i, j = n - 1, m - 1
    while (i, j) != (0, 0):
        target = C[i, j] - M[i, j]
        # Prefer the diagonal predecessor on ties.
        if i > 0 and j > 0 and math.isclose(C[i - 1, j - 1], target, abs_tol=1e-9):
            i, j = i - 1, j - 1
        elif i > 0 and math.isclose(C[i - 1, j], target, abs_tol=1e-9):
            i -= 1
        else:
            j -= 1
        pairs.append((i, j))
    pairs.reverse()
    return Alignment(tuple(pairs))


def mm_scores(
    sp_a: Scanpath, sp_b: Scanpath, g: VolumeGeometry
) -> MultiMatchScores:
    """The five MultiMatch similarity dimensions over the aligned saccades.

    Vector, length, and position are normalized by the volume diagonal,
    direction by pi, and duration per pair by the larger duration.
    """
    ua = saccade_vectors(sp_a, g)
    vb = saccade_vectors(sp_b, g)
    vox_a = to_voxel_space(sp_a, g)
    vox_b = to_voxel_space(sp_b, g)
    diag = diagonal(g)
    alignment = align(sp_a, sp_b, g)

    idx = np.asarray(alignment.pairs)
    u = ua[idx[:, 0]]
    v = vb[idx[:, 1]]

    vec_sim = 1.0 - np.minimum(np.linalg.norm(u - v, axis=1) / diag, 1.0)

    nu = np.linalg.norm(u, axis=1)
    nv = np.linalg.norm(v, axis=1)
    denom = nu * nv
    cosang = np.ones(len(idx))
    nz = denom > 0
    cosang[nz] = np.clip((u[nz] * v[nz]).sum(axis=1) / denom[nz], -1.0, 1.0)
    # sqrt(dot)**2 != dot in floats, so equal vectors can fall short of
    # cosine 1 by ~1e-16 and pick up ~1e-8 of arccos noise; pin them.
    cosang[(u == v).all(axis=1)] = 1.0
    dir_sim = 1.0 - np.arccos(cosang) / math.pi

    len_sim = 1.0 - np.abs(nu - nv) / diag

    # Position covers the aligned fixations: the shared starting pair plus
    # the target fixation of every aligned saccade pair.
    end_a = vox_a[idx[:, 0] + 1, :3]
    end_b = vox_b[idx[:, 1] + 1, :3]
    end_d = np.linalg.norm(end_a - end_b, axis=1)
    start_d = float(np.linalg.norm(vox_a[0, :3] - vox_b[0, :3]))
    pos_sim = 1.0 - np.concatenate(([start_d], end_d)) / diag

    ta = vox_a[idx[:, 0] + 1, 3]
    tb = vox_b[idx[:, 1] + 1, 3]
    dur_sim = 1.0 - np.abs(ta - tb) / np.maximum(ta, tb)

    return MultiMatchScores(
        vector=float(vec_sim.mean()),
        direction=float(dir_sim.mean()),
        length=float(len_sim.mean()),
        position=float(pos_sim.mean()),
        duration=float(dur_sim.mean()),
    )
