"""
Unit Tests for Baseline Detectors and Verdicts
==============================================

Tests for the static percentile baseline, the rolling-quantile
baseline, the global percentile filter and the Verdicts container.

Author: Adaptive Thresholds Project
Date: October 2026
"""

import numpy as np
import pytest

from src.core.model import ScoreSeries
from src.detectors.baseline import baseline_detect, baseline_fit, rolling_quantile_detect
from src.detectors.verdicts import Verdicts, filter_threshold, percentile_filter


class TestBaselineFit:
    """Test the static threshold."""

    def test_ninety_ninth_percentile(self):
        assert baseline_fit(ScoreSeries(np.arange(100.0))) == pytest.approx(98.01)

    def test_constant_scores(self):
        assert baseline_fit(ScoreSeries(np.full(20, 3.5))) == 3.5

    def test_interpolation(self):
        assert baseline_fit(ScoreSeries([0.0, 100.0]), p=0.5) == pytest.approx(50.0)

    def test_empty_train_split(self):
        with pytest.raises(ValueError, match="empty train split"):
            baseline_fit(ScoreSeries([]))


class TestBaselineDetect:
    """Test strict threshold crossing."""

    def test_strict_inequality(self):
        verdicts = baseline_detect(ScoreSeries([99.0, 98.01, 10.0]), 98.01)
        assert list(verdicts.final_anomaly) == [True, False, False]

    def test_constant_series_at_threshold(self):
        verdicts = baseline_detect(ScoreSeries(np.full(50, 4.0)), 4.0)
        assert verdicts.anomaly_count == 0

    def test_final_equals_raw(self):
        scores = ScoreSeries(np.random.default_rng(0).normal(0, 1, 200))
        verdicts = baseline_detect(scores, 1.0)
        np.testing.assert_array_equal(verdicts.final_anomaly, verdicts.raw_anomaly)
        assert verdicts.method == "baseline"

    def test_non_finite_threshold(self):
        with pytest.raises(ValueError, match="finite"):
            baseline_detect(ScoreSeries([1.0]), float("nan"))


class TestRollingQuantile:
    """Test the trailing-window quantile baseline."""

    def test_first_point_never_flagged(self):
        verdicts = rolling_quantile_detect(ScoreSeries([100.0, 1.0, 2.0]), window=5)
        assert not verdicts.final_anomaly[0]

    def test_threshold_uses_past_only(self):
        """Test that the threshold at t is the quantile of scores before t."""
        scores = ScoreSeries([1.0, 2.0, 3.0, 4.0, 50.0, 5.0])
        verdicts = rolling_quantile_detect(scores, window=3, p=0.5)
        # quantile of (2, 3, 4) at t = 4
        assert verdicts.upper[4] == pytest.approx(3.0)
        assert verdicts.final_anomaly[4]
        # quantile of (3, 4, 50) at t = 5
        assert verdicts.upper[5] == pytest.approx(4.0)
        assert verdicts.final_anomaly[5]

    def test_matches_percentile_convention(self):
        rng = np.random.default_rng(4)
        values = rng.exponential(1.0, 300)
        verdicts = rolling_quantile_detect(ScoreSeries(values), window=100, p=0.99)
        t = 250
        expected = np.quantile(values[t - 100:t], 0.99, method="linear")
        assert verdicts.upper[t] == pytest.approx(expected)

    def test_invalid_window(self):
        with pytest.raises(ValueError, match="window"):
            rolling_quantile_detect(ScoreSeries([1.0]), window=0)


class TestPercentileFilter:
    """Test the global percentile gate."""

    def test_reference_example(self):
        scores = ScoreSeries(np.arange(1.0, 101.0))
        mask = percentile_filter(scores, 0.95)
        assert list(scores.scores[mask]) == [96.0, 97.0, 98.0, 99.0, 100.0]

    def test_constant_scores_all_false(self):
        assert not percentile_filter(ScoreSeries(np.full(10, 2.0)), 0.5).any()

    def test_disabled_all_true(self):
        assert percentile_filter(ScoreSeries([1.0, 2.0]), None).all()

    def test_separate_fit_scores(self):
        """Test that the threshold comes from the fit scores when given."""
        mask = percentile_filter(ScoreSeries([5.0, 50.0]), 0.5,
                                 fit_scores=ScoreSeries([0.0, 10.0]))
        assert list(mask) == [False, True]

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="filter percentile out of range"):
            filter_threshold([1.0, 2.0], 1.0)


class TestVerdicts:
    """Test the composite-rule invariant of Verdicts."""

    def test_compose(self):
        raw = np.array([True, True, False, False])
        passed = np.array([True, False, True, False])
        verdicts = Verdicts.compose("x", raw, passed, np.zeros(4), np.ones(4))
        assert list(verdicts.final_anomaly) == [True, False, False, False]
        assert list(verdicts.anomaly_indices()) == [0]

    def test_final_outside_raw_rejected(self):
        with pytest.raises(ValueError, match="raw anomalies"):
            Verdicts(method="x", raw_anomaly=np.array([False]),
                     percentile_pass=np.array([True]), final_anomaly=np.array([True]),
                     lower=np.zeros(1), upper=np.ones(1))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="wrong length"):
            Verdicts.compose("x", [True, False], [True], [0.0, 0.0], [1.0, 1.0])
