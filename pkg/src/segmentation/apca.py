"""
APCA Segmentation Module
========================

Adaptive Piecewise Constant Approximation: splits a score series into
contiguous, constant-mean segments by recursive binary splitting.

For a range, every admissible split point p is scored by

    total_error(p) = SSE(left) + SSE(right)

and the best split is accepted only if

    min_error < no_split_error × improvement_threshold

with the improvement threshold chosen from the range's coefficient of
variation. Near-constant series (CV below 0.1) skip the search and are
cut into fixed-length segments of max(200, n // 15).

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass
from typing import List, Tuple
import logging
import math

import numpy as np

from src.bounds.confidence import segment_for
from src.core.model import ScoreSeries, Segment
from src.core.stats import ArrayLike, as_array, mean, sample_std

logger = logging.getLogger(__name__)

NOT_FLAT = math.inf
ZERO_MEAN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ApcaParams:
    """
    APCA tunables.

    Attributes:
        min_segment_length (int): Shortest admissible segment
        cv_flat_threshold (float): CV below which the fixed-length rule applies
        improvement_high (float): Split acceptance factor for high-variance ranges
        improvement_moderate (float): Split acceptance factor otherwise
        high_variance_cv (float): CV at or above which a range counts as high-variance
    """
    min_segment_length: int = 10
    cv_flat_threshold: float = 0.1
    improvement_high: float = 0.7
    improvement_moderate: float = 0.5
    high_variance_cv: float = 0.5

    def __post_init__(self):
        if self.min_segment_length < 1:
            raise ValueError("min_segment_length must be a positive integer")
        if not 0 < self.improvement_moderate <= self.improvement_high < 1:
            raise ValueError("Improvement thresholds must satisfy 0 < moderate <= high < 1")
        if self.cv_flat_threshold < 0 or self.high_variance_cv < 0:
            raise ValueError("CV thresholds cannot be negative")

    def improvement_threshold(self, cv: float) -> float:
        """Acceptance factor θ for a range with coefficient of variation cv."""
        return self.improvement_high if cv >= self.high_variance_cv else self.improvement_moderate


def coefficient_of_variation(values: ArrayLike) -> float:
    """
    Coefficient of variation: sample_std / |mean|.

    Returns 0 for constant input and +inf ("not flat") when the mean is
    numerically zero but the values vary.

    Raises:
        ValueError: If values is empty
    """
    arr = as_array(values)
    if arr.size == 0:
        raise ValueError("empty sample")
    std = sample_std(arr)
    if std == 0.0:
        return 0.0
    center = abs(mean(arr))
    if center < ZERO_MEAN_TOLERANCE:
        return NOT_FLAT
    return std / center


def sse(values: ArrayLike) -> float:
    """Sum of squared deviations from the mean."""
    arr = as_array(values)
    if arr.size == 0:
        raise ValueError("empty sample")
    return float(np.sum((arr - mean(arr)) ** 2))


def flat_segment_size(n: int) -> int:
    """Fixed segment length used for flat series: max(200, n // 15)."""
    return max(200, n // 15)


def _fixed_length_bounds(n: int) -> List[Tuple[int, int]]:
    size = flat_segment_size(n)
    count = max(1, n // size)
    bounds = [(i * size, (i + 1) * size) for i in range(count)]
    # Last segment absorbs the remainder
    bounds[-1] = (bounds[-1][0], n)
    return bounds


def _split_errors(values: np.ndarray, min_len: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    SSE(left) + SSE(right) for every admissible split of values.

    Returns (positions, errors) with positions relative to the range start.
    """
    n = values.size
    # Center first so the prefix sums stay well conditioned
    centered = values - values.mean()
    csum = np.concatenate(([0.0], np.cumsum(centered)))
    csq = np.concatenate(([0.0], np.cumsum(centered ** 2)))

    positions = np.arange(min_len, n - min_len + 1)
    left_n = positions
    right_n = n - positions
    left_sse = csq[positions] - csum[positions] ** 2 / left_n
    right_sse = (csq[n] - csq[positions]) - (csum[n] - csum[positions]) ** 2 / right_n
    errors = np.maximum(left_sse, 0.0) + np.maximum(right_sse, 0.0)
    return positions, errors


def apca_bounds(scores: ArrayLike, params: ApcaParams = ApcaParams()) -> List[Tuple[int, int]]:
    """
    Segment boundaries chosen by APCA.

    Args:
        scores: Score values, n >= 1
        params (ApcaParams): Tunables

    Returns:
        List[Tuple[int, int]]: Ordered, disjoint half-open ranges covering [0, n)

    Raises:
        ValueError: If scores is empty
    """
    values = as_array(scores)
    n = values.size
    if n == 0:
        raise ValueError("empty series")

    if coefficient_of_variation(values) < params.cv_flat_threshold:
        bounds = _fixed_length_bounds(n)
        logger.debug("Flat series (n=%d): %d fixed-length segments", n, len(bounds))
        return bounds

    min_len = params.min_segment_length
    done: List[Tuple[int, int]] = []
    pending = [(0, n)]
    while pending:
        start, end = pending.pop()
        if end - start < 2 * min_len:
            done.append((start, end))
            continue

        chunk = values[start:end]
        no_split_error = sse(chunk)
        positions, errors = _split_errors(chunk, min_len)
        best = int(np.argmin(errors))  # first minimum = smallest p
        min_error = float(errors[best])
        theta = params.improvement_threshold(coefficient_of_variation(chunk))

        if min_error < no_split_error * theta:
            split = start + int(positions[best])
            pending.append((split, end))
            pending.append((start, split))
        else:
            done.append((start, end))

    done.sort()
    logger.debug("APCA produced %d segments over %d points", len(done), n)
    return done


def apca_segment(scores: ScoreSeries, params: ApcaParams = ApcaParams(),
                 confidence_level: float = 0.99) -> List[Segment]:
    """
    APCA segmentation of a score series, each segment carrying its band.

    Args:
        scores (ScoreSeries): Scores to segment
        params (ApcaParams): Tunables
        confidence_level (float): Level used for the segment bands

    Returns:
        List[Segment]: Ordered partition of [0, n)
    """
    return [segment_for(scores.scores, start, end, confidence_level)
            for start, end in apca_bounds(scores.scores, params)]
