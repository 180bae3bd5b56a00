"""Deterministic 3D sinusoidal positional encodings.

Each axis contributes d = d_model / 3 interleaved sin/cos channels over
geometrically decaying frequencies; lattice indices are normalized to
[0, 2*pi] over the axis length (endpoint-inclusive, i.e. divided by L - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaze3d.errors import IndexOutOfRange, InvariantViolation

DEFAULT_TEMPERATURE = 10000.0


@dataclass(frozen=True)
class PosEncParams:
    d_model: int
    axis_lengths: tuple[int, int, int]
    temperature: float = DEFAULT_TEMPERATURE

    def __post_init__(self):
        if self.d_model <= 0 or self.d_model % 6 != 0:
            raise InvariantViolation(
                f"d_model={self.d_model} must be a positive multiple of 6"
            )
        if any(int(v) != v or v < 1 for v in self.axis_lengths):
            raise InvariantViolation("axis lengths must be positive integers")
        if self.temperature <= 0:
            raise InvariantViolation("temperature must be > 0")

    @property
    def d_axis(self) -> int:
        return self.d_model // 3


def omega(k: int, d: int, T: float = DEFAULT_TEMPERATURE) -> float:
    """Frequency for channel pair k: exp(-k * log(T) / (d / 2))."""
    if not 0 <= k < d // 2:
        raise IndexOutOfRange(f"k={k} outside [0, {d // 2})")
    return math.exp(-k * math.log(T) / (d / 2))


def encode_axis(pos: float, d: int, T: float = DEFAULT_TEMPERATURE) -> np.ndarray:
    """Interleaved (sin, cos) pairs of pos over the d/2 axis frequencies."""
    if d <= 0 or d % 2 != 0:
        raise InvariantViolation(f"per-axis dimension d={d} must be even")
    k = np.arange(d // 2)
    w = np.exp(-k * math.log(T) / (d / 2))
    out = np.empty(d, dtype=float)
    out[0::2] = np.sin(pos * w)
    out[1::2] = np.cos(pos * w)
    return out


def _normalize(index: int, length: int) -> float:
    if length == 1:
        return 0.0
    return 2.0 * math.pi * index / (length - 1)


def encode_3d(x: int, y: int, z: int, p: PosEncParams) -> np.ndarray:
    """Concatenated per-axis encodings for one lattice point."""
    lx, ly, lz = p.axis_lengths
    for name, idx, length in (("x", x, lx), ("y", y, ly), ("z", z, lz)):
        if not 0 <= idx < length:
            raise IndexOutOfRange(f"{name}={idx} outside [0, {length})")
    d = p.d_axis
    return np.concatenate(
        [
            encode_axis(_normalize(x, lx), d, p.temperature),
            encode_axis(_normalize(y, ly), d, p.temperature),
            encode_axis(_normalize(z, lz), d, p.temperature),
        ]
    )


def encode_lattice(p: PosEncParams) -> np.ndarray:
    """(Lx * Ly * Lz, d_model) encodings for the full lattice, x fastest."""
    lx, ly, lz = p.axis_lengths
    out = np.empty((lx * ly * lz, p.d_model), dtype=float)
    row = 0
    for z in range(lz):
        for y in range(ly):
            for x in range(lx):
                out[row] = encode_3d(x, y, z, p)
                row += 1
    return out
