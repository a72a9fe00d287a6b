"""
Baseline Detectors Module
=========================

Reference thresholds the adaptive detectors are compared against:

- Static percentile rule: θ = percentile_p(train scores), flag r_t > θ
- Rolling quantile rule: flag r_t above the p-quantile of the trailing
  window of past scores

Author: Adaptive Thresholds Project
Date: October 2026
"""

import logging
import numpy as np
import pandas as pd

from src.core.model import ScoreSeries
from src.core.stats import percentile
from src.detectors.verdicts import Verdicts

logger = logging.getLogger(__name__)


def baseline_fit(train_scores: ScoreSeries, p: float = 0.99) -> float:
    """
    Fit the static threshold.

    Args:
        train_scores (ScoreSeries): Training split
        p (float): Percentile in (0, 1)

    Returns:
        float: θ = percentile(train_scores, p)

    Raises:
        ValueError: If the training split is empty
    """
    if len(train_scores) == 0:
        raise ValueError("empty train split")
    theta = percentile(train_scores.scores, p)
    logger.debug("Baseline threshold at p=%s over %d points: %s", p, len(train_scores), theta)
    return theta


def baseline_detect(test_scores: ScoreSeries, theta: float) -> Verdicts:
    """
    Flag every score strictly above θ.

    Args:
        test_scores (ScoreSeries): Scores to judge
        theta (float): Fitted threshold

    Returns:
        Verdicts: No filter stage, so final = raw
    """
    if not np.isfinite(theta):
        raise ValueError("Baseline threshold must be finite")
    n = len(test_scores)
    raw = test_scores.scores > theta
    return Verdicts.compose("baseline", raw, np.ones(n, dtype=bool),
                            lower=np.full(n, np.nan), upper=np.full(n, theta))


def rolling_quantile_detect(scores: ScoreSeries, window: int = 500,
                            p: float = 0.99) -> Verdicts:
    """
    Flag scores above the p-quantile of the trailing window of past scores.

    The quantile at t covers the min(window, t) scores ending at t−1 and
    uses the same linear interpolation as the static percentile; t = 0 has
    no history and is never flagged.

    Args:
        scores (ScoreSeries): Scores to judge
        window (int): Trailing window length
        p (float): Quantile in (0, 1)

    Returns:
        Verdicts: Per-point flags with the moving threshold as upper bound
    """
    if window < 1:
        raise ValueError("window must be a positive integer")
    past = pd.Series(scores.scores).shift(1)
    upper = past.rolling(window, min_periods=1).quantile(p, interpolation="linear").to_numpy()
    raw = np.zeros(len(scores), dtype=bool)
    known = ~np.isnan(upper)
    raw[known] = scores.scores[known] > upper[known]
    return Verdicts.compose("rolling-quantile", raw, np.ones(len(scores), dtype=bool),
                            lower=np.full(len(scores), np.nan), upper=upper)
