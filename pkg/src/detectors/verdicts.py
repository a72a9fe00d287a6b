"""
Verdicts Module
===============

Per-point detection output shared by all detectors, and the global
percentile filter that SCS and MACS AND into their raw decisions:

    final_anomalies = anomalies ∧ percentile_filter

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass
from typing import Optional
import numpy as np

from src.core.model import ScoreSeries
from src.core.stats import ArrayLike, as_array, percentile


@dataclass(frozen=True)
class Verdicts:
    """
    Per-point flags and diagnostics of one detector run.

    Attributes:
        method (str): Detector name
        raw_anomaly (np.ndarray): Band/threshold violations before filtering
        percentile_pass (np.ndarray): Percentile-filter mask (all True when disabled)
        final_anomaly (np.ndarray): raw_anomaly ∧ percentile_pass
        lower (np.ndarray): Lower bound applied at each point (NaN = none)
        upper (np.ndarray): Upper bound applied at each point (NaN = none)
        filter_threshold (Optional[float]): Materialized filter threshold
        segment_id (Optional[np.ndarray]): SCS segment of each point
        weights (Optional[np.ndarray]): MACS attention weights, n×3
        regime (Optional[np.ndarray]): MACS regime-change flags
        attention_anomaly (Optional[np.ndarray]): MACS combined-band violations
        threshold_violations (Optional[np.ndarray]): MACS scale-vote violations
        scale_lower (Optional[np.ndarray]): MACS per-scale lower bounds, n×3 (NaN = inactive)
        scale_upper (Optional[np.ndarray]): MACS per-scale upper bounds, n×3 (NaN = inactive)
    """
    method: str
    raw_anomaly: np.ndarray
    percentile_pass: np.ndarray
    final_anomaly: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    filter_threshold: Optional[float] = None
    segment_id: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None
    regime: Optional[np.ndarray] = None
    attention_anomaly: Optional[np.ndarray] = None
    threshold_violations: Optional[np.ndarray] = None
    scale_lower: Optional[np.ndarray] = None
    scale_upper: Optional[np.ndarray] = None

    def __post_init__(self):
        n = self.raw_anomaly.size
        for name in ("percentile_pass", "final_anomaly", "lower", "upper"):
            if getattr(self, name).size != n:
                raise ValueError(f"Verdict column {name} has the wrong length")
        if np.any(self.final_anomaly & ~self.raw_anomaly):
            raise ValueError("Final anomalies must be raw anomalies")
        if np.any(self.final_anomaly & ~self.percentile_pass):
            raise ValueError("Final anomalies must pass the percentile filter")

    def __len__(self) -> int:
        return int(self.raw_anomaly.size)

    @property
    def anomaly_count(self) -> int:
        return int(self.final_anomaly.sum())

    def anomaly_indices(self) -> np.ndarray:
        """Indices flagged by the final decision, ascending."""
        return np.flatnonzero(self.final_anomaly)

    @classmethod
    def compose(cls, method: str, raw: np.ndarray, passed: np.ndarray, lower: ArrayLike,
                upper: ArrayLike, **diagnostics) -> 'Verdicts':
        """Build verdicts with final = raw ∧ passed."""
        raw = np.asarray(raw, dtype=bool)
        passed = np.asarray(passed, dtype=bool)
        return cls(method=method, raw_anomaly=raw, percentile_pass=passed,
                   final_anomaly=raw & passed, lower=as_array(lower),
                   upper=as_array(upper), **diagnostics)


def filter_threshold(fit_scores: ArrayLike, p: Optional[float]) -> Optional[float]:
    """
    Materialize the global filter threshold over the fitted scores.

    Args:
        fit_scores: Scores the detector was fitted on
        p (Optional[float]): Percentile in (0, 1), None = filter disabled

    Returns:
        Optional[float]: percentile(fit_scores, p), or None when disabled
    """
    if p is None:
        return None
    if not 0.0 < p < 1.0:
        raise ValueError("filter percentile out of range")
    return percentile(fit_scores, p)


def apply_filter(scores: ArrayLike, threshold: Optional[float]) -> np.ndarray:
    """Mask of scores strictly above threshold; all True when threshold is None."""
    arr = as_array(scores)
    if threshold is None:
        return np.ones(arr.size, dtype=bool)
    return arr > threshold


def percentile_filter(scores: ScoreSeries, p: Optional[float],
                      fit_scores: Optional[ScoreSeries] = None) -> np.ndarray:
    """
    Global percentile gate.

    The threshold is computed once over the fitted scores (the scores
    themselves when no separate fit set is given) and applied pointwise.

    Args:
        scores (ScoreSeries): Scores to gate
        p (Optional[float]): Percentile in (0, 1), None = disabled
        fit_scores (Optional[ScoreSeries]): Scores the threshold is taken from

    Returns:
        np.ndarray: True where score > threshold (all True when disabled)
    """
    reference = fit_scores if fit_scores is not None else scores
    return apply_filter(scores.scores, filter_threshold(reference.scores, p))
