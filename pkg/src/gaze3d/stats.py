"""Aggregation for the evaluation protocol: k-fold partitioning and
mean +/- 95% confidence intervals.

Intervals use Student-t quantiles: with only a handful of folds the normal
approximation understates the width materially.  The two-sided 97.5%
quantiles below are the standard printed table (e.g. Abramowitz & Stegun,
Table 26.10) for df 1..30 plus selected large df; intermediate df fall
back to the next smaller tabulated value (conservative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaze3d.errors import BadK, NonFinite, TooFewValues

T_975 = {
    1: 12.706, 2: 4.303, 3: 3.182, 4: 2.776, 5: 2.571,
    6: 2.447, 7: 2.365, 8: 2.306, 9: 2.262, 10: 2.228,
    11: 2.201, 12: 2.179, 13: 2.160, 14: 2.145, 15: 2.131,
    16: 2.120, 17: 2.110, 18: 2.101, 19: 2.093, 20: 2.086,
    21: 2.080, 22: 2.074, 23: 2.069, 24: 2.064, 25: 2.060,
    26: 2.056, 27: 2.052, 28: 2.048, 29: 2.045, 30: 2.042,
    40: 2.021, 60: 2.000, 120: 1.980,
}
Z_975 = 1.960


def t_quantile(df: int) -> float:
    """Two-sided 97.5% Student-t quantile for df degrees of freedom."""
    if df in T_975:
        return T_975[df]
    smaller = [k for k in T_975 if k <= df]
    if smaller:
        return T_975[max(smaller)]
    return Z_975


@dataclass(frozen=True)
class AggregateSummary:
    mean: float
    std: float
    ci95_half_width: float
    n: int


def aggregate(values) -> AggregateSummary:
    """Mean, sample std (n-1) and t-based 95% CI half-width."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size < 2:
        raise TooFewValues(f"need >= 2 values, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("aggregate input contains non-finite values")
    n = int(arr.size)
    mean = float(arr.mean())
    std = float(arr.std(ddof=1))
    half = t_quantile(n - 1) * std / math.sqrt(n)
    return AggregateSummary(mean=mean, std=std, ci95_half_width=half, n=n)


def kfold(ids: list[str], k: int, seed: int = 0) -> list[list[str]]:
    """Deterministic partition into k near-equal folds (sizes differ <= 1)."""
    if k < 2:
        raise BadK(f"k={k} must be >= 2")
    if len(ids) < k:
        raise BadK(f"k={k} exceeds number of ids ({len(ids)})")
    rng = np.random.default_rng(seed)
    order = list(ids)
    rng.shuffle(order)
    base, extra = divmod(len(order), k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(order[start : start + size])
        start += size
    return folds


def format_summary(summaries: dict[str, AggregateSummary]) -> str:
    """Aligned-column text table: metric, mean, +/- ci, n."""
    name_w = max(len("metric"), *(len(k) for k in summaries)) if summaries else 6
    lines = [f"{'metric':<{name_w}}  {'mean':>10}  {'ci95':>10}  {'n':>4}"]
    for name, s in summaries.items():
        lines.append(
            f"{name:<{name_w}}  {s.mean:>10.4f}  {s.ci95_half_width:>10.4f}  {s.n:>4d}"
        )
    return "\n".join(lines)
