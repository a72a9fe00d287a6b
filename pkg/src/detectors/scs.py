"""
Segmented Confidence Sequences (SCS) Module
===========================================

SCS fits in one batch step and then judges points segment by segment:

1. Segmentation: APCA or K-means over the fit scores
2. Bound calculation: one confidence band per segment
3. Point assignment: each index goes to its covering segment; indices
   past the fitted range go to the last segment
4. Detection: score outside the segment band (strict)
5. Filtering: AND with the global percentile gate

ScsStream continues a fitted model online, refreshing the band of the
last segment as points arrive. scs_detect(online=True) runs it over
every index past the fitted range.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from collections import deque
from dataclasses import dataclass
from typing import Deque, List, Optional, Tuple
import logging

import numpy as np

from src.bounds.confidence import band_for
from src.core.config import RunConfig
from src.core.model import ConfidenceBand, ScoreSeries, Segment
from src.detectors.verdicts import Verdicts, apply_filter, filter_threshold
from src.segmentation.apca import ApcaParams, apca_segment
from src.segmentation.kmeans import KmeansParams, kmeans_segment

logger = logging.getLogger(__name__)

HISTORY_FACTOR = 10


@dataclass(frozen=True)
class ScsModel:
    """
    A fitted SCS model.

    Attributes:
        segments (Tuple[Segment, ...]): Partition of the fitted range, with bands
        confidence_level (float): Level used for the bands
        filter_percentile (Optional[float]): Percentile gate, None = disabled
        filter_threshold (Optional[float]): Gate materialized over the fit scores
        min_segment_length (int): Segmentation minimum; sizes the stream history
        method (str): 'apca' or 'kmeans'
    """
    segments: Tuple[Segment, ...]
    confidence_level: float
    filter_percentile: Optional[float] = None
    filter_threshold: Optional[float] = None
    min_segment_length: int = 10
    method: str = "apca"

    def __post_init__(self):
        if not self.segments:
            raise ValueError("SCS model needs at least one segment")
        expected = 0
        for seg in self.segments:
            if seg.start != expected:
                raise ValueError("Segments must partition the fitted range")
            expected = seg.end

    @property
    def fitted_length(self) -> int:
        return self.segments[-1].end

    def segment_index(self, positions: np.ndarray) -> np.ndarray:
        """Covering segment of each index; indices past the fit map to the last."""
        starts = np.array([seg.start for seg in self.segments])
        return np.searchsorted(starts, positions, side="right") - 1

    def summary(self) -> str:
        lines = [f"SCS model ({self.method}, confidence {self.confidence_level})",
                 "=" * 50]
        lines.extend(str(seg) for seg in self.segments)
        if self.filter_threshold is not None:
            lines.append(f"Filter: p={self.filter_percentile}, threshold={self.filter_threshold:.6g}")
        return "\n".join(lines)


def scs_fit(scores: ScoreSeries, config: RunConfig) -> ScsModel:
    """
    Segment the fit scores and attach a band to every segment.

    Args:
        scores (ScoreSeries): Fit scores, nonempty
        config (RunConfig): Segmentation method and confidence level

    Returns:
        ScsModel: The fitted model
    """
    n = len(scores)
    if n == 0:
        raise ValueError("empty series")
    level = config.confidence_level
    if config.segmentation_method == "apca":
        params = ApcaParams(min_segment_length=config.min_segment_length)
        segments = apca_segment(scores, params, level)
    else:
        params = KmeansParams.for_length(
            n, k=config.n_segments, window=config.kmeans_window,
            stride=config.kmeans_stride, max_iters=config.kmeans_max_iters,
            seed=config.seed, min_segment_length=config.min_segment_length)
        segments = kmeans_segment(scores, params, level)

    p = config.resolved_filter_percentile
    threshold = filter_threshold(scores.scores, p)
    logger.info("SCS %s fit: %d segments over %d points", config.segmentation_method,
                len(segments), n)
    return ScsModel(segments=tuple(segments), confidence_level=level,
                    filter_percentile=p, filter_threshold=threshold,
                    min_segment_length=config.min_segment_length,
                    method=config.segmentation_method)


def scs_detect(scores: ScoreSeries, model: ScsModel, online: bool = False) -> Verdicts:
    """
    Judge each score against the band of its segment.

    Args:
        scores (ScoreSeries): Scores indexed from 0 like the fit scores;
            indices past the fitted range use the last segment
        model (ScsModel): Fitted model
        online (bool): Judge indices past the fitted range through an
            ScsStream seeded with the fitted prefix of scores, so the last
            band is refreshed after every point. Off = frozen last band.

    Returns:
        Verdicts: raw = outside band, final = raw ∧ filter
    """
    values = scores.scores
    seg_id = model.segment_index(np.arange(values.size))
    lowers = np.array([seg.band.lower for seg in model.segments])
    uppers = np.array([seg.band.upper for seg in model.segments])
    lower, upper = lowers[seg_id], uppers[seg_id]

    fitted = model.fitted_length
    if online and values.size > fitted:
        stream = ScsStream(model, scores.slice(0, fitted))
        for t in range(fitted, values.size):
            lower[t], upper[t] = stream.band.lower, stream.band.upper
            stream.update(float(values[t]))
        logger.debug("SCS streamed %d points past the fitted range", values.size - fitted)

    raw = (values < lower) | (values > upper)
    passed = apply_filter(values, model.filter_threshold)
    return Verdicts.compose(f"scs-{model.method}", raw, passed, lower, upper,
                            filter_threshold=model.filter_threshold, segment_id=seg_id)


class ScsStream:
    """
    Online continuation of a fitted SCS model.

    Each new score is judged against the current band of the last
    segment and then folded into that segment's history (the most recent
    10 × min_segment_length points), which refreshes the band.
    A stream is single-consumer.

    Example:
        >>> stream = ScsStream(model, fit_scores)
        >>> flags = [stream.update(s) for s in incoming]
    """

    def __init__(self, model: ScsModel, fit_scores: ScoreSeries):
        if len(fit_scores) != model.fitted_length:
            raise ValueError("Fit scores do not match the fitted range")
        last = model.segments[-1]
        self.model = model
        self.history: Deque[float] = deque(
            fit_scores.scores[last.start:last.end],
            maxlen=HISTORY_FACTOR * model.min_segment_length)
        self.band: ConfidenceBand = last.band
        self.position = model.fitted_length

    def update(self, score: float) -> bool:
        """
        Judge one score, then absorb it.

        Args:
            score (float): Next score

        Returns:
            bool: Final anomaly flag (band violation ∧ filter)
        """
        if not np.isfinite(score):
            raise ValueError(f"Non-finite score at index {self.position}")
        raw = self.band.violated_by(score)
        threshold = self.model.filter_threshold
        passed = threshold is None or score > threshold

        self.history.append(float(score))
        self.band = band_for(np.fromiter(self.history, dtype=np.float64),
                             self.model.confidence_level)
        self.position += 1
        return bool(raw and passed)

    def run(self, scores: ScoreSeries) -> List[bool]:
        """Feed a batch of scores through update()."""
        return [self.update(float(s)) for s in scores.scores]
