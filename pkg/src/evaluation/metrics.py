"""
Evaluation Metrics Module
=========================

Confusion counts, metric sets and proportional improvement over the
static baseline:

    Δmetric = (metric_method − metric_baseline) / metric_baseline

applied to accuracy, precision, recall and F1 alike.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from typing import Dict, Mapping
import logging

import numpy as np
from sklearn.metrics import confusion_matrix

from src.core.model import ConfusionCounts, LabelSeries, MetricSet
from src.core.stats import ArrayLike

logger = logging.getLogger(__name__)

METRIC_NAMES = ("accuracy", "precision", "recall", "f1")


def confusion(flags: ArrayLike, labels: LabelSeries) -> ConfusionCounts:
    """
    Count flagged/labeled agreement pointwise.

    Args:
        flags: Final anomaly flags, one per index
        labels (LabelSeries): Ground truth of the same length

    Returns:
        ConfusionCounts: TP, FP, TN, FN

    Raises:
        ValueError: If the lengths differ
    """
    predicted = np.asarray(flags, dtype=bool).reshape(-1)
    if predicted.size != len(labels):
        raise ValueError(f"length mismatch: {predicted.size} flags, {len(labels)} labels")
    if predicted.size == 0:
        return ConfusionCounts()
    tn, fp, fn, tp = confusion_matrix(labels.labels.astype(int), predicted.astype(int),
                                      labels=[0, 1]).ravel()
    return ConfusionCounts(tp=int(tp), fp=int(fp), tn=int(tn), fn=int(fn))


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def metrics(counts: ConfusionCounts) -> MetricSet:
    """
    Accuracy, precision, recall and F1 from confusion counts.

    A zero denominator gives 0 rather than NaN.

    Raises:
        ValueError: If the counts are all zero
    """
    if counts.total == 0:
        raise ValueError("empty confusion counts")
    precision = _ratio(counts.tp, counts.tp + counts.fp)
    recall = _ratio(counts.tp, counts.tp + counts.fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return MetricSet(accuracy=(counts.tp + counts.tn) / counts.total,
                     precision=precision, recall=recall, f1=f1)


def proportional_improvement(new: float, old: float) -> float:
    """
    Relative change (new − old) / old.

    Raises:
        ValueError: If old is zero
    """
    if old == 0:
        raise ValueError("baseline metric zero")
    return (new - old) / old


def delta_row(method: MetricSet, baseline: MetricSet) -> Dict[str, float]:
    """Proportional improvement of every metric of one method."""
    return {name: proportional_improvement(getattr(method, name), getattr(baseline, name))
            for name in METRIC_NAMES}


def delta_report(method_counts: Mapping[str, ConfusionCounts],
                 baseline_counts: ConfusionCounts) -> Dict[str, Dict[str, float]]:
    """
    Performance deltas of each method against the baseline.

    Args:
        method_counts: Method name → confusion counts
        baseline_counts (ConfusionCounts): Counts of the reference method

    Returns:
        Dict[str, Dict[str, float]]: Method name → {accuracy, precision,
        recall, f1} deltas, methods in sorted order

    Raises:
        ValueError: If any baseline metric is zero
    """
    reference = metrics(baseline_counts)
    report = {}
    for name in sorted(method_counts):
        report[name] = delta_row(metrics(method_counts[name]), reference)
        logger.debug("Deltas for %s: %s", name, report[name])
    return report
