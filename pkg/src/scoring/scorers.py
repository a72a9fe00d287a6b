"""
Anomaly Scoring Module
======================

Turns a raw value series into the anomaly-score stream that every
detector consumes. Three deterministic scorers are provided:

- identity: the values themselves (use this to ingest externally
  computed scores, e.g. auto-encoder residuals stored in the CSV)
- abs_diff: |x[t] − x[t−1]|, 0 at t = 0
- rolling_residual: |x[t] − mean(trailing window ending at t)|

An optional seasonal differencing step runs before scoring.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass
from typing import Dict, Optional
import logging

import numpy as np
import pandas as pd

from src.core.model import ScoreSeries
from src.core.stats import ArrayLike, as_array

logger = logging.getLogger(__name__)

SCORER_KINDS = ("identity", "abs_diff", "rolling_residual")


@dataclass(frozen=True)
class ScorerSpec:
    """
    Scorer selection.

    Attributes:
        kind (str): One of 'identity', 'abs_diff', 'rolling_residual'
        window (int): Trailing window for rolling_residual (>= 2)
        seasonal_lag (Optional[int]): Lag removed by differencing before scoring
    """
    kind: str = "abs_diff"
    window: int = 50
    seasonal_lag: Optional[int] = None

    def __post_init__(self):
        if self.kind not in SCORER_KINDS:
            raise ValueError(f"Unknown scorer '{self.kind}', expected one of {SCORER_KINDS}")
        if self.window < 1:
            raise ValueError("Scorer window must be positive")
        if self.kind == "rolling_residual" and self.window < 2:
            raise ValueError("rolling_residual needs a window of at least 2")
        if self.seasonal_lag is not None and self.seasonal_lag < 1:
            raise ValueError("Seasonal lag must be a positive integer")

    @property
    def scorer_id(self) -> str:
        ident = self.kind if self.kind != "rolling_residual" else f"{self.kind}[{self.window}]"
        if self.seasonal_lag:
            ident = f"deseasonalize[{self.seasonal_lag}]+{ident}"
        return ident

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "window": self.window, "seasonal_lag": self.seasonal_lag}


def deseasonalize(series: ArrayLike, lag: int) -> np.ndarray:
    """
    Seasonal differencing: out[t] = x[t] − x[t−lag], first `lag` outputs 0.

    Args:
        series: Values
        lag (int): Seasonal period, 1 <= lag < n

    Returns:
        np.ndarray: Differenced series of the same length

    Raises:
        ValueError: If lag >= n
    """
    values = as_array(series)
    if lag < 1:
        raise ValueError("Seasonal lag must be a positive integer")
    if lag >= values.size:
        raise ValueError("lag exceeds series")
    out = np.zeros_like(values)
    out[lag:] = values[lag:] - values[:-lag]
    return out


def _rolling_residual(values: np.ndarray, window: int) -> np.ndarray:
    # min_periods=1 gives the min(window, t+1) trailing mean
    trailing = pd.Series(values).rolling(window, min_periods=1).mean().to_numpy()
    return np.abs(values - trailing)


def score(series: ArrayLike, spec: ScorerSpec) -> ScoreSeries:
    """
    Compute anomaly scores for a value series in a single pass.

    Args:
        series: Nonempty values
        spec (ScorerSpec): Scorer selection

    Returns:
        ScoreSeries: Scores aligned with the input

    Raises:
        ValueError: If the series is empty
    """
    values = as_array(series)
    if values.size == 0:
        raise ValueError("empty series")
    if spec.seasonal_lag:
        values = deseasonalize(values, spec.seasonal_lag)

    if spec.kind == "identity":
        scores = values.copy()
    elif spec.kind == "abs_diff":
        scores = np.zeros_like(values)
        scores[1:] = np.abs(np.diff(values))
    else:
        scores = _rolling_residual(values, spec.window)

    logger.debug("Scored %d points with %s", values.size, spec.scorer_id)
    return ScoreSeries(scores=scores, scorer_id=spec.scorer_id)
