"""
CSV Input/Output Module
=======================

Reads and writes series in the ingestion format:

    timestamp,value[,label]

UTF-8, '.' decimal separator, labels 0/1. Timestamps are carried
through untouched; samples are indexed densely from 0 in file order.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from typing import Optional, Tuple
import logging

import numpy as np
import pandas as pd

from src.core.model import LabelSeries, TimeSeries

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("timestamp", "value")
LABEL_COLUMN = "label"


class InputFormatError(ValueError):
    """Raised when an input file does not follow the ingestion format."""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


def read_csv(path: str) -> Tuple[TimeSeries, Optional[LabelSeries]]:
    """
    Read a labeled or unlabeled series.

    Args:
        path (str): CSV file with header timestamp,value[,label]

    Returns:
        Tuple[TimeSeries, Optional[LabelSeries]]: The series, and its labels
        when the file has a label column

    Raises:
        InputFormatError: On a bad header or a malformed row (1-based data row)
        OSError: If the file cannot be read
    """
    frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    columns = [c.strip() for c in frame.columns]
    if tuple(columns[:2]) != REQUIRED_COLUMNS or len(columns) > 3 or (
            len(columns) == 3 and columns[2] != LABEL_COLUMN):
        raise InputFormatError(
            f"missing header: expected 'timestamp,value[,label]', got '{','.join(columns)}'")
    frame.columns = columns
    has_labels = LABEL_COLUMN in columns

    values = np.empty(len(frame))
    labels = np.zeros(len(frame), dtype=bool)
    for i, row in enumerate(frame.itertuples(index=False)):
        try:
            value = float(row.value)
        except ValueError:
            raise InputFormatError(f"non-numeric value '{row.value}'", row=i + 1) from None
        if not np.isfinite(value):
            raise InputFormatError(f"non-finite value '{row.value}'", row=i + 1)
        values[i] = value
        if has_labels:
            flag = row.label.strip()
            if flag not in ("0", "1"):
                raise InputFormatError(f"bad label '{row.label}'", row=i + 1)
            labels[i] = flag == "1"

    logger.debug("Read %d rows from %s (labels: %s)", len(frame), path, has_labels)
    series = TimeSeries(values=values, timestamps=tuple(frame["timestamp"]))
    return series, (LabelSeries(labels) if has_labels else None)


def split(series: TimeSeries, fraction: float) -> Tuple[TimeSeries, TimeSeries]:
    """
    Chronological train/test split at ⌊fraction·n⌋.

    Raises:
        ValueError: If either part would be empty
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError("split out of range")
    cut = int(np.floor(fraction * len(series)))
    if cut == 0:
        raise ValueError("empty train")
    if cut == len(series):
        raise ValueError("empty test")
    return series.slice(0, cut), series.slice(cut, len(series))


def write_series_csv(path: str, series: TimeSeries,
                     labels: Optional[LabelSeries] = None) -> None:
    """
    Write a series in the ingestion format, floats with 17 significant digits.

    Missing timestamps are written as the sample index.
    """
    if labels is not None and len(labels) != len(series):
        raise ValueError("Labels must match the series length")
    stamps = series.timestamps if series.timestamps is not None else range(len(series))
    frame = pd.DataFrame({"timestamp": list(stamps), "value": series.values})
    if labels is not None:
        frame[LABEL_COLUMN] = labels.labels.astype(int)
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    logger.debug("Wrote %d rows to %s", len(series), path)
