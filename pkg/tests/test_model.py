"""
Unit Tests for Domain Model Module
==================================

Tests for series, bands, segments, attention weights and evaluation
value objects.

Author: Adaptive Thresholds Project
Date: October 2026
"""

import numpy as np
import pytest

from src.core.model import (
    ATTENTION_TABLE, AttentionWeights, ConfidenceBand, ConfusionCounts, LabelSeries,
    MetricSet, ScoreSeries, Segment, SeriesSample, TimeSeries,
)


class TestTimeSeries:
    """Test series construction and slicing."""

    def test_samples_are_densely_indexed(self):
        """Test that samples are numbered 0..n-1 and carry timestamps."""
        series = TimeSeries(values=[1.0, 2.0, 3.0], timestamps=["a", "b", "c"])
        samples = list(series.samples())
        assert [s.index for s in samples] == [0, 1, 2]
        assert samples[1] == SeriesSample(index=1, timestamp="b", value=2.0)

    def test_non_finite_value_raises_error(self):
        """Test that NaN values are rejected with their index."""
        with pytest.raises(ValueError, match="index 1"):
            TimeSeries(values=[1.0, np.nan, 3.0])

    def test_timestamp_count_must_match(self):
        with pytest.raises(ValueError, match="Timestamps"):
            TimeSeries(values=[1.0, 2.0], timestamps=["a"])

    def test_values_are_read_only(self):
        """Test that the value array cannot be mutated."""
        series = TimeSeries(values=[1.0, 2.0])
        with pytest.raises(ValueError):
            series.values[0] = 5.0

    def test_slice(self):
        series = TimeSeries(values=[1.0, 2.0, 3.0, 4.0], timestamps=["a", "b", "c", "d"])
        part = series.slice(1, 3)
        assert list(part.values) == [2.0, 3.0]
        assert part.timestamps == ("b", "c")


class TestScoreAndLabels:
    """Test score and label series."""

    def test_scores_must_be_finite(self):
        with pytest.raises(ValueError, match="finite"):
            ScoreSeries(scores=[0.0, np.inf])

    def test_score_slice_keeps_scorer(self):
        scores = ScoreSeries(scores=[1.0, 2.0, 3.0], scorer_id="abs_diff")
        assert scores.slice(0, 2).scorer_id == "abs_diff"
        assert len(scores.slice(0, 2)) == 2

    def test_labels_from_integers(self):
        labels = LabelSeries([0, 1, 1, 0])
        assert labels.labels.dtype == bool
        assert labels.anomaly_count == 2

    def test_bad_label_raises_error(self):
        with pytest.raises(ValueError, match="0 or 1"):
            LabelSeries([0, 2])


class TestBandAndSegment:
    """Test confidence bands and segments."""

    def test_around(self):
        band = ConfidenceBand.around(10.0, 2.0)
        assert (band.lower, band.upper, band.width) == (8.0, 12.0, 2.0)
        assert band.center == 10.0

    def test_violation_is_strict(self):
        """Test that points on the bounds are not violations."""
        band = ConfidenceBand.around(0.0, 1.0)
        assert not band.violated_by(1.0)
        assert not band.violated_by(-1.0)
        assert band.violated_by(1.0000001)
        assert band.violated_by(-1.5)

    def test_negative_width_raises_error(self):
        with pytest.raises(ValueError, match="negative"):
            ConfidenceBand(lower=0.0, upper=1.0, width=-1.0)

    def test_empty_segment_raises_error(self):
        band = ConfidenceBand.around(0.0, 0.0)
        with pytest.raises(ValueError, match="Empty segment"):
            Segment(start=5, end=5, mean=0.0, std=0.0, band=band)

    def test_segment_length_and_cover(self):
        seg = Segment(start=3, end=8, mean=1.0, std=0.5, band=ConfidenceBand.around(1.0, 0.9))
        assert seg.length == 5
        assert seg.covers(3) and seg.covers(7)
        assert not seg.covers(8)
        assert "[3, 8)" in str(seg)


class TestAttentionWeights:
    """Test the attention weight table."""

    @pytest.mark.parametrize("triple", ATTENTION_TABLE)
    def test_table_entries_are_convex(self, triple):
        """Test that every table entry sums to one."""
        weights = AttentionWeights(*triple)
        assert weights.as_array().sum() == pytest.approx(1.0)

    def test_other_triples_rejected(self):
        with pytest.raises(ValueError, match="Attention weights"):
            AttentionWeights(0.5, 0.25, 0.25)


class TestEvaluationObjects:
    """Test confusion counts and metric sets."""

    def test_confusion_total_and_dict(self):
        counts = ConfusionCounts(tp=1, fp=2, tn=3, fn=4)
        assert counts.total == 10
        assert ConfusionCounts.from_dict(counts.to_dict()) == counts

    def test_negative_count_raises_error(self):
        with pytest.raises(ValueError, match="negative"):
            ConfusionCounts(tp=-1)

    def test_metric_range(self):
        with pytest.raises(ValueError, match="precision"):
            MetricSet(accuracy=0.5, precision=1.5, recall=0.1, f1=0.1)

    def test_metric_dict(self):
        metric_set = MetricSet(accuracy=0.9, precision=0.5, recall=0.25, f1=1 / 3)
        assert MetricSet.from_dict(metric_set.to_dict()) == metric_set
