"""
Multi-Scale Adaptive Confidence Segments (MACS) Module
======================================================

MACS judges every point against rolling confidence bands at three
temporal scales (short, medium, long) in a single left-to-right pass:

1. Multi-scale analysis: band over the trailing scores of each scale,
   strictly before t (a scale needs 2 past points to give a verdict)
2. Attention: rolling local variance, min-max normalized, picks the
   scale weights from a fixed table
3. Bound combination: weighted sum of the active scale bounds
4. Regime detection: normalized shift of the current short-window
   mean/std against the long window ending `short` steps earlier
5. Dual detection: scale votes (>= 2 of 3) and combined-band violation
6. Regime-aware decision: during a regime change both must agree
7. Filtering: AND with the global percentile gate

macs_detect runs the pass over a whole series with vectorized rolling
statistics; MacsStream runs it one point at a time.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from collections import deque
from dataclasses import dataclass
from typing import Deque, List, Optional, Tuple
import logging

import numpy as np
import pandas as pd

from src.bounds.confidence import band_for, bound_width
from src.core.config import RunConfig
from src.core.model import (
    AttentionWeights, HIGH_VARIANCE_WEIGHTS, LOW_VARIANCE_WEIGHTS,
    MEDIUM_VARIANCE_WEIGHTS, ScoreSeries,
)
from src.core.stats import mean, sample_std
from src.detectors.verdicts import Verdicts, apply_filter, filter_threshold

logger = logging.getLogger(__name__)

HIGH_VARIANCE_CUTOFF = 0.7
MEDIUM_VARIANCE_CUTOFF = 0.3
MEAN_CHANGE_LIMIT = 2.0
STD_CHANGE_LIMIT = 1.5
REGIME_EPS = 1e-8
MIN_SCALE_POINTS = 2


def attention_weights(normalized_variance: float) -> AttentionWeights:
    """
    Scale weights for a normalized local variance in [0, 1].

    > 0.7 → (0.6, 0.3, 0.1), > 0.3 → (0.2, 0.6, 0.2), else (0.1, 0.3, 0.6)
    """
    if normalized_variance > HIGH_VARIANCE_CUTOFF:
        return AttentionWeights(*HIGH_VARIANCE_WEIGHTS)
    if normalized_variance > MEDIUM_VARIANCE_CUTOFF:
        return AttentionWeights(*MEDIUM_VARIANCE_WEIGHTS)
    return AttentionWeights(*LOW_VARIANCE_WEIGHTS)


def _weight_table(normalized: np.ndarray) -> np.ndarray:
    """Vectorized attention_weights over a column of normalized variances."""
    table = np.empty((normalized.size, 3))
    table[:] = LOW_VARIANCE_WEIGHTS
    table[normalized > MEDIUM_VARIANCE_CUTOFF] = MEDIUM_VARIANCE_WEIGHTS
    table[normalized > HIGH_VARIANCE_CUTOFF] = HIGH_VARIANCE_WEIGHTS
    return table


def local_variance_window(short: int, n: int) -> int:
    """Rolling-variance window: min(short, n // 10), never below 2."""
    return max(MIN_SCALE_POINTS, min(short, n // 10))


def normalize_unit(values: np.ndarray) -> np.ndarray:
    """Min-max normalize to [0, 1]; a constant column maps to 0."""
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi <= lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def combine_bounds(weights: np.ndarray, lower: np.ndarray,
                   upper: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Attention-weighted bounds over the active scales.

    Inactive scales (NaN bounds) are dropped and the remaining weights
    renormalized; rows with no active scale give NaN.

    Args:
        weights: n×3 table weights
        lower: n×3 scale lower bounds
        upper: n×3 scale upper bounds

    Returns:
        Tuple[np.ndarray, np.ndarray]: combined (lower, upper)
    """
    active = ~np.isnan(lower)
    w = np.where(active, weights, 0.0)
    total = w.sum(axis=1)
    safe_total = np.where(total > 0, total, 1.0)

    def weighted(bounds: np.ndarray) -> np.ndarray:
        # offsets from the smallest active bound keep equal bounds exact
        ref = np.where(active, bounds, np.inf).min(axis=1)
        ref = np.where(np.isfinite(ref), ref, 0.0)
        offsets = np.where(active, bounds - ref[:, None], 0.0)
        return ref + (offsets * w).sum(axis=1) / safe_total

    comb_lower, comb_upper = weighted(lower), weighted(upper)
    comb_lower[total == 0] = np.nan
    comb_upper[total == 0] = np.nan
    return comb_lower, comb_upper


def _regime_flags(series: pd.Series, short: int, long_: int) -> np.ndarray:
    """Regime-change flags from the current short window against the lagged long window."""
    n = series.size
    hist_mean = series.rolling(long_).mean().shift(short).to_numpy()
    hist_std = series.rolling(long_).std(ddof=1).shift(short).to_numpy()
    cur_mean = series.rolling(short).mean().to_numpy()
    if short >= 2:
        cur_std = series.rolling(short).std(ddof=1).to_numpy()
    else:
        cur_std = np.zeros(n)

    with np.errstate(invalid="ignore"):
        mean_change = (cur_mean - hist_mean) / (hist_std + REGIME_EPS)
        std_change = (cur_std - hist_std) / (hist_std + REGIME_EPS)
        regime = ((np.abs(mean_change) > MEAN_CHANGE_LIMIT)
                  | (np.abs(std_change) > STD_CHANGE_LIMIT))
    regime[: long_ + short] = False
    return regime


def macs_detect(scores: ScoreSeries, config: RunConfig) -> Verdicts:
    """
    Run MACS over a whole score series.

    Args:
        scores (ScoreSeries): Scores, n >= 2
        config (RunConfig): Windows, confidence level, filter, vote threshold
            and decision rule

    Returns:
        Verdicts: Final flags with combined bounds and MACS diagnostics

    Raises:
        ValueError: If the series has fewer than 2 points
    """
    values = scores.scores
    n = values.size
    if n < 2:
        raise ValueError("series too short")
    level = config.confidence_level
    series = pd.Series(values)
    past = series.shift(1)

    # 1. per-scale bands over strictly past scores
    scale_lower = np.full((n, 3), np.nan)
    scale_upper = np.full((n, 3), np.nan)
    for i, window in enumerate(config.windows):
        rolling = past.rolling(window, min_periods=MIN_SCALE_POINTS)
        center = rolling.mean().to_numpy()
        width = bound_width(rolling.std(ddof=1).to_numpy(), level)
        scale_lower[:, i] = center - width
        scale_upper[:, i] = center + width
    active = ~np.isnan(scale_lower)

    # 2. attention weights from normalized local variance
    short, _, long_ = config.windows
    v = local_variance_window(short, n)
    local_var = series.rolling(v, min_periods=MIN_SCALE_POINTS).var(ddof=1).fillna(0.0)
    normalized = normalize_unit(local_var.to_numpy())
    weights = _weight_table(normalized)

    # 3. combined bounds
    comb_lower, comb_upper = combine_bounds(weights, scale_lower, scale_upper)

    # 4. regime detection
    regime = _regime_flags(series, short, long_)

    # 5. dual detection
    with np.errstate(invalid="ignore"):
        scale_anomaly = active & ((values[:, None] < scale_lower) | (values[:, None] > scale_upper))
        attention = ~np.isnan(comb_lower) & ((values < comb_lower) | (values > comb_upper))
    votes = scale_anomaly.sum(axis=1)
    violations = votes >= config.violation_threshold

    # 6. decision rule
    if config.decision_rule == "vote":
        raw = violations
    else:
        raw = np.where(regime, violations & attention, attention)

    # 7. percentile filter over the whole series
    threshold = filter_threshold(values, config.resolved_filter_percentile)
    passed = apply_filter(values, threshold)

    logger.debug("MACS over %d points: %d raw, %d regime points", n, int(raw.sum()),
                 int(regime.sum()))
    return Verdicts.compose("macs", raw, passed, comb_lower, comb_upper,
                            filter_threshold=threshold, weights=weights, regime=regime,
                            attention_anomaly=attention, threshold_violations=violations,
                            scale_lower=scale_lower, scale_upper=scale_upper)


@dataclass
class MacsPoint:
    """Diagnostics of one streamed point."""
    index: int
    final_anomaly: bool
    raw_anomaly: bool
    combined_lower: float
    combined_upper: float
    weights: AttentionWeights
    regime: bool
    votes: int


class MacsStream:
    """
    Online MACS, one point at a time.

    Per-scale buffers never hold more than their window; the regime
    history holds long + short points. Local variance is normalized over
    the range observed so far. A stream is single-consumer.

    Args:
        config (RunConfig): Windows, confidence level, filter and decision rule
        fit_scores (Optional[ScoreSeries]): Scores the filter threshold is
            taken from; required when the filter is enabled
        expected_length (Optional[int]): Series length used to size the
            local-variance window; defaults to the short window
    """

    def __init__(self, config: RunConfig, fit_scores: Optional[ScoreSeries] = None,
                 expected_length: Optional[int] = None):
        if config.filter_enabled and fit_scores is None:
            raise ValueError("fit scores required to materialize the percentile filter")
        self.config = config
        short, _, long_ = config.windows
        self.buffers: List[Deque[float]] = [deque(maxlen=w) for w in config.windows]
        var_window = (local_variance_window(short, expected_length)
                      if expected_length is not None else max(MIN_SCALE_POINTS, short))
        self.var_buffer: Deque[float] = deque(maxlen=var_window)
        self.history: Deque[float] = deque(maxlen=long_ + short)
        self.var_min = np.inf
        self.var_max = -np.inf
        self.position = 0
        self.filter_threshold = (
            filter_threshold(fit_scores.scores, config.resolved_filter_percentile)
            if fit_scores is not None else None)

    def _regime(self) -> bool:
        short, _, long_ = self.config.windows
        if self.position < long_ + short:
            return False
        window = np.fromiter(self.history, dtype=np.float64)
        hist, cur = window[:long_], window[-short:]
        hist_std = sample_std(hist)
        mean_change = (mean(cur) - mean(hist)) / (hist_std + REGIME_EPS)
        std_change = (sample_std(cur) - hist_std) / (hist_std + REGIME_EPS)
        return abs(mean_change) > MEAN_CHANGE_LIMIT or abs(std_change) > STD_CHANGE_LIMIT

    def update(self, score: float) -> MacsPoint:
        """
        Judge one score, then absorb it into the scale buffers.

        Args:
            score (float): Next score

        Returns:
            MacsPoint: Verdict and diagnostics for this point
        """
        if not np.isfinite(score):
            raise ValueError(f"Non-finite score at index {self.position}")
        level = self.config.confidence_level

        bands = [band_for(np.fromiter(buf, dtype=np.float64), level)
                 if len(buf) >= MIN_SCALE_POINTS else None for buf in self.buffers]

        self.var_buffer.append(score)
        local_var = sample_std(np.fromiter(self.var_buffer, dtype=np.float64)) ** 2
        self.var_min = min(self.var_min, local_var)
        self.var_max = max(self.var_max, local_var)
        span = self.var_max - self.var_min
        normalized = (local_var - self.var_min) / span if span > 0 else 0.0
        weights = attention_weights(normalized)

        lower = np.array([[b.lower if b is not None else np.nan for b in bands]])
        upper = np.array([[b.upper if b is not None else np.nan for b in bands]])
        comb_lower, comb_upper = (float(c[0]) for c in
                                  combine_bounds(weights.as_array()[None, :], lower, upper))
        attention = not np.isnan(comb_lower) and (score < comb_lower or score > comb_upper)

        votes = sum(1 for b in bands if b is not None and b.violated_by(score))
        violations = votes >= self.config.violation_threshold

        self.history.append(score)
        regime = self._regime()
        if self.config.decision_rule == "vote":
            raw = violations
        else:
            raw = (violations and attention) if regime else attention
        passed = self.filter_threshold is None or score > self.filter_threshold

        for buf in self.buffers:
            buf.append(score)
        point = MacsPoint(index=self.position, final_anomaly=bool(raw and passed),
                          raw_anomaly=bool(raw), combined_lower=comb_lower,
                          combined_upper=comb_upper, weights=weights, regime=regime,
                          votes=votes)
        self.position += 1
        return point
