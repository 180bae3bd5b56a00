"""Grid quantization, string-edit distance, and 3D ScanMatch.

Symbols are integer cell ids rather than ASCII letters, so grids are not
limited to a 26/52-cell alphabet.  The substitution score for two cells is
D_max - d(center_i, center_j) with distances taken in voxel space, which
keeps the normalized ScanMatch score in [0, 1] with self-score 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaze3d._kernels import levenshtein_kernel, nw_score_kernel
from gaze3d.core import Scanpath, VolumeGeometry
from gaze3d.errors import GridMismatch, InvariantViolation

DEFAULT_GRID = (8, 8, 4)
DEFAULT_TEMPORAL_BIN_MS = 50.0
DEFAULT_GAP_PENALTY = 0.0


@dataclass(frozen=True)
class GridSpec:
    """Discrete cell counts per axis for scanpath quantization."""

    nx: int
    ny: int
    nz: int

    def __post_init__(self):
        for name in ("nx", "ny", "nz"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise InvariantViolation(f"{name}={v!r} must be a positive integer")

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny * self.nz


@dataclass(frozen=True)
class SymbolSequence:
    """Cell-id sequence produced by quantizing a scanpath."""

    grid: GridSpec
    symbols: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.symbols, dtype=np.int32)
        if arr.size and (arr.min() < 0 or arr.max() >= self.grid.n_cells):
            raise InvariantViolation("symbol id outside grid range")
        object.__setattr__(self, "symbols", arr)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class SubstitutionMatrix:
    """Dense pairwise cell scores; diagonal entries equal max_score."""

    grid: GridSpec
    scores: np.ndarray
    max_score: float


def quantize(
    sp: Scanpath,
    g: VolumeGeometry,
    grid: GridSpec,
    temporal_bin_ms: float | None = None,
) -> SymbolSequence:
    """Map each fixation to its cell id, optionally repeating by duration.

    Cell id = iz*(nx*ny) + iy*nx + ix with ix = floor(x*nx) clamped to
    nx-1.  With a temporal bin, each symbol repeats ceil(t / bin) times.
    """
    syms = []
    for f in sp.fixations:
        ix = min(int(f.x * grid.nx), grid.nx - 1)
        iy = min(int(f.y * grid.ny), grid.ny - 1)
        iz = min(int(f.z * grid.nz), grid.nz - 1)
        cell = iz * (grid.nx * grid.ny) + iy * grid.nx + ix
        if temporal_bin_ms is None:
            syms.append(cell)
        else:
            syms.extend([cell] * int(math.ceil(f.t / temporal_bin_ms)))
    return SymbolSequence(grid, np.array(syms, dtype=np.int32))


def levenshtein(a: SymbolSequence, b: SymbolSequence) -> int:
    """Standard unit-cost edit distance between two symbol sequences."""
    if a.grid != b.grid:
        raise GridMismatch(f"grids differ: {a.grid} vs {b.grid}")
    return int(levenshtein_kernel(a.symbols, b.symbols))


def sed(
    sp_a: Scanpath, sp_b: Scanpath, g: VolumeGeometry, grid: GridSpec
) -> int:
    """String-edit distance between cell-quantized scanpaths (no binning)."""
    return levenshtein(quantize(sp_a, g, grid), quantize(sp_b, g, grid))


def cell_centers(g: VolumeGeometry, grid: GridSpec) -> np.ndarray:
    """(K, 3) voxel-space coordinates of all cell centers, id order."""
    sx, sy, sz = g.width_vox - 1, g.height_vox - 1, g.depth_vox - 1
    cx = (np.arange(grid.nx) + 0.5) / grid.nx * sx
    cy = (np.arange(grid.ny) + 0.5) / grid.ny * sy
    cz = (np.arange(grid.nz) + 0.5) / grid.nz * sz
    zz, yy, xx = np.meshgrid(cz, cy, cx, indexing="ij")
    return np.stack([xx.ravel(), yy.ravel(), zz.ravel()], axis=1)


def substitution_matrix(g: VolumeGeometry, grid: GridSpec) -> SubstitutionMatrix:
    """Scores D_max - d(c_i, c_j) over 3D Euclidean cell-center distances."""
    centers = cell_centers(g, grid)
    diff = centers[:, None, :] - centers[None, :, :]
    d = np.sqrt((diff**2).sum(axis=2))
    d_max = float(d.max())
    return SubstitutionMatrix(grid, d_max - d, d_max)


def needleman_wunsch(
    a: SymbolSequence,
    b: SymbolSequence,
    sub: SubstitutionMatrix,
    gap_penalty: float = DEFAULT_GAP_PENALTY,
) -> float:
    """Optimal global alignment score maximizing total substitution score."""
    if a.grid != sub.grid or b.grid != sub.grid:
        raise GridMismatch("sequence grid does not match substitution matrix")
    return float(nw_score_kernel(a.symbols, b.symbols, sub.scores, gap_penalty))


def scanmatch(
    sp_a: Scanpath,
    sp_b: Scanpath,
    g: VolumeGeometry,
    grid: GridSpec,
    with_duration: bool = False,
    temporal_bin_ms: float = DEFAULT_TEMPORAL_BIN_MS,
    gap_penalty: float = DEFAULT_GAP_PENALTY,
    sub: SubstitutionMatrix | None = None,
) -> float:
    """Normalized ScanMatch similarity in [0, 1].

    A precomputed substitution matrix may be passed to amortize it across
    many pair evaluations over the same (geometry, grid).
    """
    bin_ms = temporal_bin_ms if with_duration else None
    a = quantize(sp_a, g, grid, bin_ms)
    b = quantize(sp_b, g, grid, bin_ms)
    if sub is None:
        sub = substitution_matrix(g, grid)
    score = needleman_wunsch(a, b, sub, gap_penalty)
    if sub.max_score == 0:
        # Degenerate 1x1x1 grid: every alignment is a perfect match.
        return 1.0
    norm = score / (sub.max_score * max(len(a), len(b)))
    return float(min(max(norm, 0.0), 1.0))
