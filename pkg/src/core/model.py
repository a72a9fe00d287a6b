"""
Domain Model Module
===================

This module defines the value objects shared by every stage of the
detection pipeline:

- TimeSeries / SeriesSample: raw observations, densely indexed
- ScoreSeries: anomaly scores aligned index-for-index with a series
- LabelSeries: ground-truth normal/anomalous flags
- ConfidenceBand / Segment: local statistics and score bounds
- AttentionWeights: convex weights over the three MACS scales
- ConfusionCounts / MetricSet: evaluation results

All objects are frozen after construction; array fields are made
read-only so they can be shared between threads.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple
import numpy as np


def _frozen_array(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SeriesSample:
    """
    One observation of a univariate series.

    Attributes:
        index (int): Dense position 0..n-1
        timestamp (Optional[str]): Opaque timestamp carried through from input
        value (float): Finite observation
    """
    index: int
    timestamp: Optional[str]
    value: float

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("Sample index cannot be negative")
        if not np.isfinite(self.value):
            raise ValueError(f"Sample {self.index} has a non-finite value")


@dataclass(frozen=True)
class TimeSeries:
    """
    A densely indexed univariate series.

    Values are stored as one read-only array; individual SeriesSample
    objects are produced on demand.

    Attributes:
        values (np.ndarray): Finite observations
        timestamps (Optional[Tuple[str, ...]]): One timestamp per value, if known
    """
    values: np.ndarray
    timestamps: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        values = _frozen_array(self.values)
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise ValueError(f"Non-finite value at index {bad}")
        object.__setattr__(self, "values", values)
        if self.timestamps is not None:
            stamps = tuple(str(t) for t in self.timestamps)
            if len(stamps) != values.size:
                raise ValueError("Timestamps must match the number of values")
            object.__setattr__(self, "timestamps", stamps)

    def __len__(self) -> int:
        return int(self.values.size)

    def samples(self) -> Iterator[SeriesSample]:
        """Iterate the series as SeriesSample objects."""
        for i, v in enumerate(self.values):
            stamp = self.timestamps[i] if self.timestamps is not None else None
            yield SeriesSample(index=i, timestamp=stamp, value=float(v))

    def slice(self, start: int, end: int) -> 'TimeSeries':
        """Return the half-open range [start, end) as a new series."""
        stamps = self.timestamps[start:end] if self.timestamps is not None else None
        return TimeSeries(values=self.values[start:end], timestamps=stamps)


@dataclass(frozen=True)
class ScoreSeries:
    """
    Anomaly scores, one per sample index.

    Attributes:
        scores (np.ndarray): Finite scores
        scorer_id (str): Name of the scoring operation that produced them
    """
    scores: np.ndarray
    scorer_id: str = "identity"

    def __post_init__(self):
        scores = _frozen_array(self.scores)
        if not np.all(np.isfinite(scores)):
            raise ValueError("Scores must be finite")
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return int(self.scores.size)

    def slice(self, start: int, end: int) -> 'ScoreSeries':
        """Return scores in [start, end) with the same scorer id."""
        return ScoreSeries(scores=self.scores[start:end], scorer_id=self.scorer_id)


@dataclass(frozen=True)
class LabelSeries:
    """
    Ground-truth flags: True = anomalous, False = normal.

    Attributes:
        labels (np.ndarray): Boolean flags, one per index
    """
    labels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.labels).reshape(-1)
        if raw.dtype != bool:
            if raw.size and not np.all(np.isin(raw, (0, 1))):
                raise ValueError("Labels must be 0 or 1")
        object.__setattr__(self, "labels", _frozen_array(raw, dtype=bool))

    def __len__(self) -> int:
        return int(self.labels.size)

    @property
    def anomaly_count(self) -> int:
        return int(self.labels.sum())


@dataclass(frozen=True)
class ConfidenceBand:
    """
    Score bounds around a center: [center − width, center + width].

    Attributes:
        lower (float): Lower bound
        upper (float): Upper bound
        width (float): Half-width, nonnegative
    """
    lower: float
    upper: float
    width: float

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("Band width cannot be negative")
        if self.lower > self.upper:
            raise ValueError("Band lower bound exceeds upper bound")

    @classmethod
    def around(cls, center: float, width: float) -> 'ConfidenceBand':
        """Build the symmetric band center ± width."""
        return cls(lower=center - width, upper=center + width, width=width)

    @property
    def center(self) -> float:
        return (self.lower + self.upper) / 2

    def violated_by(self, score: float) -> bool:
        """Strict violation test: score < lower or score > upper."""
        return score < self.lower or score > self.upper


@dataclass(frozen=True)
class Segment:
    """
    A contiguous, locally stationary range [start, end) of a score series.

    Attributes:
        start (int): Inclusive start index
        end (int): Exclusive end index
        mean (float): Mean of the covered scores
        std (float): Sample standard deviation of the covered scores
        band (ConfidenceBand): Score bounds for the segment
    """
    start: int
    end: int
    mean: float
    std: float
    band: ConfidenceBand

    def __post_init__(self):
        if self.start < 0:
            raise ValueError("Segment start cannot be negative")
        if self.start >= self.end:
            raise ValueError(f"Empty segment [{self.start}, {self.end})")
        if self.std < 0:
            raise ValueError("Segment std cannot be negative")

    @property
    def length(self) -> int:
        return self.end - self.start

    def covers(self, index: int) -> bool:
        return self.start <= index < self.end

    def __str__(self) -> str:
        return (f"Segment [{self.start}, {self.end}): mean={self.mean:.4g}, "
                f"std={self.std:.4g}, band=[{self.band.lower:.4g}, {self.band.upper:.4g}]")


@dataclass(frozen=True)
class AttentionWeights:
    """
    Convex weights over the (short, medium, long) scales.

    Only the three triples of the attention lookup table are admitted.
    """
    w_short: float
    w_medium: float
    w_long: float

    def __post_init__(self):
        if (self.w_short, self.w_medium, self.w_long) not in ATTENTION_TABLE:
            raise ValueError(
                f"Attention weights must be one of {ATTENTION_TABLE}, "
                f"got {(self.w_short, self.w_medium, self.w_long)}"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.w_short, self.w_medium, self.w_long])


HIGH_VARIANCE_WEIGHTS = (0.6, 0.3, 0.1)
MEDIUM_VARIANCE_WEIGHTS = (0.2, 0.6, 0.2)
LOW_VARIANCE_WEIGHTS = (0.1, 0.3, 0.6)
ATTENTION_TABLE = (HIGH_VARIANCE_WEIGHTS, MEDIUM_VARIANCE_WEIGHTS, LOW_VARIANCE_WEIGHTS)


@dataclass(frozen=True)
class ConfusionCounts:
    """Confusion-matrix counts over the evaluated points."""
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            if getattr(self, name) < 0:
                raise ValueError(f"Confusion count {name} cannot be negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def to_dict(self) -> Dict[str, int]:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}

    @classmethod
    def from_dict(cls, data: Dict) -> 'ConfusionCounts':
        return cls(**{k: int(v) for k, v in data.items()})


@dataclass(frozen=True)
class MetricSet:
    """Accuracy, precision, recall and F1, each in [0, 1]."""
    accuracy: float
    precision: float
    recall: float
    f1: float

    def __post_init__(self):
        for name in ("accuracy", "precision", "recall", "f1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"Metric {name} must be in [0, 1], got {value}")

    def to_dict(self) -> Dict[str, float]:
        return {"accuracy": self.accuracy, "precision": self.precision,
                "recall": self.recall, "f1": self.f1}

    @classmethod
    def from_dict(cls, data: Dict) -> 'MetricSet':
        return cls(**{k: float(v) for k, v in data.items()})
