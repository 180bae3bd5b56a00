"""Batch pair evaluation: all metrics for (ground truth, prediction) pairs.

Pure functions over manifest entries so the CLI can fan cases out to a
process pool; the substitution matrix is rebuilt per worker but cached per
(geometry, grid) within it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gaze3d import io, multimatch, saliency, strmetrics
from gaze3d.core import VolumeGeometry
from gaze3d.strmetrics import GridSpec

ALL_METRICS = (
    "scanmatch_nodur",
    "scanmatch_dur",
    "sed",
    "multimatch",
    "cc",
    "nss",
    "kldiv",
)


@dataclass(frozen=True)
class EvalParams:
    metrics: tuple[str, ...] = ALL_METRICS
    grid: GridSpec = field(default_factory=lambda: GridSpec(*strmetrics.DEFAULT_GRID))
    temporal_bin_ms: float = strmetrics.DEFAULT_TEMPORAL_BIN_MS
    gap_penalty: float = strmetrics.DEFAULT_GAP_PENALTY
    sigma_xy_deg: float = 1.0
    sigma_z_slices: float = 1.0


@dataclass
class MetricReport:
    case_id: str
    scanmatch_nodur: float | None = None
    scanmatch_dur: float | None = None
    sed: float | None = None
    mm: dict | None = None
    cc: float | None = None
    nss: float | None = None
    kldiv: float | None = None

    def as_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "scanmatch_nodur": self.scanmatch_nodur,
            "scanmatch_dur": self.scanmatch_dur,
            "sed": self.sed,
            "mm": self.mm,
            "cc": self.cc,
            "nss": self.nss,
            "kldiv": self.kldiv,
        }


_SUB_CACHE: dict = {}


def _substitution(g: VolumeGeometry, grid: GridSpec):
    key = (g, grid)
    if key not in _SUB_CACHE:
        _SUB_CACHE[key] = strmetrics.substitution_matrix(g, grid)
    return _SUB_CACHE[key]


def evaluate_entry(entry: io.ManifestEntry, params: EvalParams) -> MetricReport:
    """Compute all selected metrics for one ground-truth/prediction pair."""
    gt, _ = io.read_scanpath(entry.gt_path)
    if entry.pred_path is None:
        raise io.ParseError(f"{entry.case_id}: no pred_path in manifest")
    pred, _ = io.read_scanpath(entry.pred_path)
    g = entry.geometry
    report = MetricReport(case_id=entry.case_id)

    wanted = set(params.metrics)
    if {"scanmatch_nodur", "scanmatch_dur", "sed"} & wanted:
        sub = _substitution(g, params.grid)
        if "scanmatch_nodur" in wanted:
            report.scanmatch_nodur = strmetrics.scanmatch(
                pred, gt, g, params.grid, with_duration=False,
                gap_penalty=params.gap_penalty, sub=sub,
            )
        if "scanmatch_dur" in wanted:
            report.scanmatch_dur = strmetrics.scanmatch(
                pred, gt, g, params.grid, with_duration=True,
                temporal_bin_ms=params.temporal_bin_ms,
                gap_penalty=params.gap_penalty, sub=sub,
            )
        if "sed" in wanted:
            report.sed = strmetrics.sed(pred, gt, g, params.grid)

    if "multimatch" in wanted:
        report.mm = multimatch.mm_scores(pred, gt, g).as_dict()

    if {"cc", "nss", "kldiv"} & wanted:
        sal_pred = saliency.render_saliency(
            pred, g, params.sigma_xy_deg, params.sigma_z_slices
        )
        if {"cc", "kldiv"} & wanted:
            sal_gt = saliency.render_saliency(
                gt, g, params.sigma_xy_deg, params.sigma_z_slices
            )
            if "cc" in wanted:
                report.cc = saliency.cc(sal_pred, sal_gt)
            if "kldiv" in wanted:
                report.kldiv = saliency.kldiv(sal_pred, sal_gt)
        if "nss" in wanted:
            fix_gt = saliency.fixation_volume(gt, g)
            report.nss = saliency.nss(sal_pred, fix_gt, n_fixations=len(gt))

    return report


def metric_values(reports: list[MetricReport]) -> dict[str, list[float]]:
    """Flatten reports into per-metric value lists (mm dims prefixed mm_)."""
    out: dict[str, list[float]] = {}
    for r in reports:
        d = r.as_dict()
        mm = d.pop("mm")
        d.pop("case_id")
        if mm:
            for k, v in mm.items():
                d[f"mm_{k}"] = v
        for k, v in d.items():
            if v is not None:
                out.setdefault(k, []).append(float(v))
    return out
