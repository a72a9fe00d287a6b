"""
Confidence Bounds Module
========================

Hoeffding-style score bands shared by SCS (one band per segment) and
MACS (one band per temporal scale).

    bound_width = 1.5 × std_score × m(confidence_level)

    m = 1.2 if confidence_level > 0.95
        0.8 if confidence_level < 0.90
        1.0 otherwise

    band = [mean − bound_width, mean + bound_width]

Author: Adaptive Thresholds Project
Date: October 2026
"""

from typing import Union
import numpy as np

from src.core.model import ConfidenceBand, Segment
from src.core.stats import ArrayLike, as_array, mean, sample_std

BASE_WIDTH_FACTOR = 1.5
HIGH_CONFIDENCE = 0.95
LOW_CONFIDENCE = 0.90
WIDEN = 1.2
NARROW = 0.8


def confidence_multiplier(confidence_level: float) -> float:
    """
    Width multiplier for a confidence level.

    Both boundaries are strict, so 0.95 and 0.90 get 1.0.

    Args:
        confidence_level (float): Level in (0, 1)

    Returns:
        float: 1.2, 1.0 or 0.8
    """
    if confidence_level > HIGH_CONFIDENCE:
        return WIDEN
    if confidence_level < LOW_CONFIDENCE:
        return NARROW
    return 1.0


def bound_width(std_score: Union[float, np.ndarray],
                confidence_level: float) -> Union[float, np.ndarray]:
    """
    Half-width of the band for a given score spread.

    Accepts a scalar or an array of standard deviations (the rolling
    detectors pass whole columns at once).

    Args:
        std_score: Sample standard deviation(s), nonnegative
        confidence_level (float): Level in (0, 1)

    Returns:
        Half-width(s), same shape as std_score
    """
    return BASE_WIDTH_FACTOR * std_score * confidence_multiplier(confidence_level)


def band_for(values: ArrayLike, confidence_level: float) -> ConfidenceBand:
    """
    Band centered on the mean of values.

    Args:
        values: Nonempty scores
        confidence_level (float): Level in (0, 1)

    Returns:
        ConfidenceBand: mean ± bound_width(sample_std(values))

    Raises:
        ValueError: If values is empty
    """
    arr = as_array(values)
    if arr.size == 0:
        raise ValueError("empty sample")
    width = float(bound_width(sample_std(arr), confidence_level))
    return ConfidenceBand.around(mean(arr), width)


def segment_for(scores: ArrayLike, start: int, end: int,
                confidence_level: float) -> Segment:
    """
    Build a Segment over scores[start:end] with its local band.

    Args:
        scores: Full score array
        start (int): Inclusive start
        end (int): Exclusive end
        confidence_level (float): Level in (0, 1)

    Returns:
        Segment: Statistics and band recomputed from the covered scores
    """
    covered = as_array(scores)[start:end]
    return Segment(start=start, end=end, mean=mean(covered), std=sample_std(covered),
                   band=band_for(covered, confidence_level))
