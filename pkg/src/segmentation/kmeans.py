"""
K-means Segmentation Module
===========================

Feature-based segmentation: sliding windows over the score series are
described by (mean, std, median, skewness), standardized, and clustered
with K-means. Each point inherits the majority cluster of the windows
covering it; runs of equal labels become segments.

When clustering cannot separate anything (too few distinct feature
vectors, or a cluster that stays empty) the whole series is returned as
a single segment.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple
import logging

import numpy as np
from scipy.stats import skew
from sklearn.cluster import KMeans
from sklearn.preprocessing import StandardScaler

from src.bounds.confidence import segment_for
from src.core.model import ScoreSeries, Segment
from src.core.stats import ArrayLike, as_array, mean, sample_std

logger = logging.getLogger(__name__)

DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class KmeansParams:
    """
    K-means segmentation tunables.

    Attributes:
        k (int): Number of clusters
        window (int): Feature window length
        stride (int): Offset between consecutive windows (<= window)
        max_iters (int): Lloyd iteration cap
        seed (int): Seed for the initial center choice
        min_segment_length (int): Runs shorter than this are merged
    """
    k: int = 5
    window: int = 20
    stride: int = 10
    max_iters: int = 100
    seed: int = 0
    min_segment_length: int = 10

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.window < 1 or self.stride < 1:
            raise ValueError("window and stride must be positive integers")
        if self.stride > self.window:
            raise ValueError("stride cannot exceed window")
        if self.max_iters < 1:
            raise ValueError("max_iters must be a positive integer")
        if self.min_segment_length < 1:
            raise ValueError("min_segment_length must be a positive integer")

    @classmethod
    def for_length(cls, n: int, k: int = 5, window: Optional[int] = None,
                   stride: Optional[int] = None, max_iters: int = 100, seed: int = 0,
                   min_segment_length: int = 10) -> 'KmeansParams':
        """
        Defaults derived from the series length.

        window = max(20, n // 50), stride = window // 2.
        """
        window = window if window is not None else max(20, n // 50)
        stride = stride if stride is not None else max(1, window // 2)
        return cls(k=k, window=window, stride=stride, max_iters=max_iters, seed=seed,
                   min_segment_length=min_segment_length)


def window_features(window: ArrayLike) -> np.ndarray:
    """
    Statistical description of one window.

    Args:
        window: Scores, length >= 1

    Returns:
        np.ndarray: (mean, sample std, median, Fisher–Pearson skewness);
        skewness is 0 when the population std is below 1e-12
    """
    arr = as_array(window)
    if arr.size == 0:
        raise ValueError("empty sample")
    if np.std(arr) < DEGENERATE_STD:
        skewness = 0.0
    else:
        skewness = float(skew(arr, bias=True))
    return np.array([mean(arr), sample_std(arr), float(np.median(arr)), skewness])


def reduce_multidim(data: ArrayLike) -> np.ndarray:
    """
    Collapse an n×d matrix to one dimension by averaging each row.

    Args:
        data: n×d values (a 1-D input is treated as d = 1)

    Returns:
        np.ndarray: Row means, length n
    """
    matrix = np.asarray(data, dtype=np.float64)
    if matrix.ndim == 1:
        return matrix.copy()
    if matrix.ndim != 2 or matrix.shape[1] < 1:
        raise ValueError("Expected an n×d matrix with d >= 1")
    if matrix.shape[1] == 1:
        return matrix[:, 0].copy()
    return matrix.mean(axis=1)


def _windows(n: int, window: int, stride: int) -> List[Tuple[int, int]]:
    """Window ranges at offsets 0, stride, ...; the last is clipped to n."""
    ranges = []
    for offset in range(0, n, stride):
        end = min(offset + window, n)
        if end - offset >= 2:
            ranges.append((offset, end))
        if end == n:
            break
    return ranges


def _standardize(features: np.ndarray) -> np.ndarray:
    """Zero mean, unit sample std per column; degenerate columns become 0."""
    m = features.shape[0]
    scaled = StandardScaler().fit_transform(features)
    # StandardScaler divides by the population std; rescale to sample std
    if m > 1:
        scaled *= np.sqrt((m - 1) / m)
    degenerate = features.std(axis=0) < DEGENERATE_STD
    scaled[:, degenerate] = 0.0
    return scaled


def _farthest_point_centers(points: np.ndarray, k: int, seed: int) -> np.ndarray:
    """First center drawn from the seed, each next one farthest from those chosen."""
    rng = np.random.default_rng(seed)
    chosen = [int(rng.integers(points.shape[0]))]
    nearest = np.sum((points - points[chosen[0]]) ** 2, axis=1)
    for _ in range(1, k):
        nxt = int(np.argmax(nearest))
        chosen.append(nxt)
        nearest = np.minimum(nearest, np.sum((points - points[nxt]) ** 2, axis=1))
    return points[chosen]


def _point_labels(n: int, ranges: List[Tuple[int, int]], window_labels: np.ndarray,
                  k: int) -> np.ndarray:
    """
    Majority cluster of the windows covering each point.

    Ties go to the label of the earliest covering window among the tied
    labels; uncovered trailing points copy their predecessor.
    """
    votes = np.zeros((n, k), dtype=np.int64)
    for (start, end), label in zip(ranges, window_labels):
        votes[start:end, label] += 1
    best = votes.max(axis=1)

    labels = np.full(n, -1, dtype=np.int64)
    for (start, end), label in zip(ranges, window_labels):
        span = slice(start, end)
        pick = (labels[span] == -1) & (votes[span, label] == best[span])
        labels[span][pick] = label

    for i in range(n):
        if labels[i] == -1:
            labels[i] = labels[i - 1] if i > 0 else window_labels[0]
    return labels


def _runs_to_bounds(labels: np.ndarray, min_len: int) -> List[Tuple[int, int]]:
    """
    Equal-label runs as segments; short runs merge into the preceding
    segment, a short first run merges forward.
    """
    change = np.flatnonzero(np.diff(labels)) + 1
    starts = np.concatenate(([0], change))
    ends = np.concatenate((change, [labels.size]))

    bounds: List[Tuple[int, int]] = []
    carry_start = None
    for start, end in zip(starts.tolist(), ends.tolist()):
        if carry_start is not None:
            start, carry_start = carry_start, None
        if end - start >= min_len:
            bounds.append((start, end))
        elif bounds:
            bounds[-1] = (bounds[-1][0], end)
        else:
            carry_start = start
    if carry_start is not None:
        # every run was short
        bounds.append((carry_start, int(labels.size)))
    return bounds


def kmeans_bounds(scores: ArrayLike, params: KmeansParams) -> List[Tuple[int, int]]:
    """
    Segment boundaries from clustering sliding-window features.

    Args:
        scores: Score values, n >= 1
        params (KmeansParams): Tunables

    Returns:
        List[Tuple[int, int]]: Ordered, disjoint ranges covering [0, n)
    """
    values = as_array(scores)
    n = values.size
    if n == 0:
        raise ValueError("empty series")
    single = [(0, n)]

    ranges = _windows(n, params.window, params.stride)
    if not ranges:
        logger.warning("K-means segmentation: no usable windows, using one segment")
        return single
    features = np.vstack([window_features(values[s:e]) for s, e in ranges])
    if np.unique(features, axis=0).shape[0] < params.k:
        logger.warning("K-means segmentation: fewer than %d distinct feature vectors, "
                       "using one segment", params.k)
        return single

    points = _standardize(features)
    centers = _farthest_point_centers(points, params.k, params.seed)
    model = KMeans(n_clusters=params.k, init=centers, n_init=1,
                   max_iter=params.max_iters, random_state=params.seed % 2**32)
    window_labels = model.fit_predict(points)
    if np.unique(window_labels).size < params.k:
        logger.warning("K-means segmentation: empty cluster, using one segment")
        return single

    labels = _point_labels(n, ranges, window_labels, params.k)
    bounds = _runs_to_bounds(labels, params.min_segment_length)
    logger.debug("K-means produced %d segments from %d windows", len(bounds), len(ranges))
    return bounds


def kmeans_segment(scores: ScoreSeries, params: KmeansParams,
                   confidence_level: float = 0.99) -> List[Segment]:
    """
    K-means segmentation of a score series, each segment carrying its band.

    Args:
        scores (ScoreSeries): Scores to segment
        params (KmeansParams): Tunables
        confidence_level (float): Level used for the segment bands

    Returns:
        List[Segment]: Ordered partition of [0, n)
    """
    return [segment_for(scores.scores, start, end, confidence_level)
            for start, end in kmeans_bounds(scores.scores, params)]
