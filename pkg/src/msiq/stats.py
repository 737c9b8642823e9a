"""Rank statistics and the geometric-specificity coefficient.

The specificity coefficient scores how selectively a metric reacts to
geometric deformations: the mean metric increment over the four
geometric degradation kinds divided by the increment under the JPEG
control. Increments are polarity-adjusted so that a positive increment
always means "the metric got worse".
"""

from __future__ import annotations

import enum
import math
from typing import Mapping, Sequence

import numpy as np

from .errors import ParameterError, UndefinedCorrelationError
from .transforms import GEOMETRIC_KINDS, DegradationKind

#: Guard against division by a numerically-zero JPEG increment.
DIVISION_EPS = 1e-15


class MetricPolarity(enum.Enum):
    LOWER_IS_BETTER = "lower_is_better"
    HIGHER_IS_BETTER = "higher_is_better"


#: Polarity of every metric this package reports.
METRIC_POLARITIES = {
    "psnr": MetricPolarity.HIGHER_IS_BETTER,
    "ssim": MetricPolarity.HIGHER_IS_BETTER,
    "msiq_rmse": MetricPolarity.LOWER_IS_BETTER,
    "msiq_w": MetricPolarity.LOWER_IS_BETTER,
}


def _average_ranks(values: np.ndarray) -> np.ndarray:
    # ranks 1..n with ties replaced by the mean rank of their run
    _, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    ends = np.cumsum(counts)
    starts = ends - counts
    mean_rank = (starts + 1 + ends) / 2.0
    return mean_rank[inverse]


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation: Pearson correlation of average-tie ranks.

    Raises
    ------
    ParameterError
        On length mismatch or fewer than two samples.
    UndefinedCorrelationError
        If either side has zero rank variance (all values tied).
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterError(f"sequences must be 1D of equal length, got {x.shape} vs {y.shape}")
    if x.size < 2:
        raise ParameterError("rank correlation needs at least two samples")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    sx = float(np.sqrt(np.sum(rx * rx)))
    sy = float(np.sqrt(np.sum(ry * ry)))
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("zero rank variance; correlation undefined")
    rho = float(np.dot(rx, ry) / (sx * sy))
    return max(-1.0, min(1.0, rho))


def delta_m(
    metric_at_lambda: float, metric_at_zero: float, polarity: MetricPolarity
) -> float:
    """Polarity-adjusted metric increment relative to the zero-strength anchor."""
    if not (math.isfinite(metric_at_lambda) and math.isfinite(metric_at_zero)):
        raise ParameterError("metric increments require finite values")
    if polarity is MetricPolarity.LOWER_IS_BETTER:
        return metric_at_lambda - metric_at_zero
    return metric_at_zero - metric_at_lambda


def specificity_r(
    geom_deltas: Mapping["DegradationKind | str", float], jpeg_delta: float
) -> "float | None":
    """Geometric/JPEG separation: mean geometric increment over the JPEG one.

    Returns ``None`` (the "unstable" state) when the JPEG increment is
    numerically zero; callers report that state and exclude it from
    aggregate means. A negative JPEG increment yields a negative R and
    is carried through as-is.
    """
    keyed = {DegradationKind.parse(k): float(v) for k, v in geom_deltas.items()}
    missing = [k.value for k in GEOMETRIC_KINDS if k not in keyed]
    if missing:
        raise ParameterError(f"missing geometric kinds: {missing}")
    extra = [k.value for k in keyed if k not in GEOMETRIC_KINDS]
    if extra:
        raise ParameterError(f"non-geometric kinds not allowed: {extra}")
    mean_geom = float(np.mean([keyed[k] for k in GEOMETRIC_KINDS]))
    if abs(jpeg_delta) < DIVISION_EPS:
        return None
    return mean_geom / jpeg_delta


def signed_tracking(
    lambdas: Sequence[float], metric_values: Sequence[float], polarity: MetricPolarity
) -> float:
    """Signed rank correlation between strength and metric response.

    The sign is flipped for higher-is-better metrics so that +1 always
    means a correct monotone response to increasing degradation.
    """
    rho = spearman(lambdas, metric_values)
    if polarity is MetricPolarity.HIGHER_IS_BETTER:
        return -rho
    return rho
