"""3D gaze analysis: volumetric scanpath metrics, simplification,
synthetic gaze generation, positional encodings, and an evaluation harness.
"""

from gaze3d.core import (
    Fixation,
    Saccade,
    Scanpath,
    VolumeGeometry,
    diagonal,
    saccades,
    to_voxel_space,
)
from gaze3d.multimatch import MultiMatchScores, SimplifyParams, mm_scores, simplify
from gaze3d.saliency import (
    FixationVolume,
    ScalarVolume,
    cc,
    fixation_volume,
    kldiv,
    nss,
    render_saliency,
)
from gaze3d.strmetrics import (
    GridSpec,
    SubstitutionMatrix,
    SymbolSequence,
    levenshtein,
    needleman_wunsch,
    quantize,
    scanmatch,
    sed,
    substitution_matrix,
)
from gaze3d.synth import Fixation2D, JitterParams, jitter, lift_2d_to_3d

__version__ = "0.1.0"

__all__ = [
    "Fixation",
    "Fixation2D",
    "FixationVolume",
    "GridSpec",
    "JitterParams",
    "MultiMatchScores",
    "Saccade",
    "ScalarVolume",
    "Scanpath",
    "SimplifyParams",
    "SubstitutionMatrix",
    "SymbolSequence",
    "VolumeGeometry",
    "cc",
    "diagonal",
    "fixation_volume",
    "jitter",
    "kldiv",
    "levenshtein",
    "lift_2d_to_3d",
    "mm_scores",
    "needleman_wunsch",
    "nss",
    "quantize",
    "render_saliency",
    "saccades",
    "scanmatch",
    "sed",
    "simplify",
    "substitution_matrix",
    "to_voxel_space",
]
