"""
Unit Tests for Segmented Confidence Sequences Module
====================================================

Author: Adaptive Thresholds Project
Date: October 2026
"""

import numpy as np
import pytest

from src.core.config import RunConfig
from src.core.model import ScoreSeries
from src.detectors.scs import ScsModel, ScsStream, scs_detect, scs_fit


def _step(high: float = 100.0) -> ScoreSeries:
    return ScoreSeries(np.concatenate([np.zeros(500), np.full(500, high)]))


class TestScsFit:
    """Test segmentation plus per-segment bands."""

    def test_constant_scores_flat_rule(self):
        model = scs_fit(ScoreSeries(np.full(3000, 2.0)), RunConfig())
        assert len(model.segments) == 15
        assert all(seg.band.width == 0.0 for seg in model.segments)

    def test_step_series(self):
        model = scs_fit(_step(), RunConfig())
        assert [(s.start, s.end) for s in model.segments] == [(0, 500), (500, 1000)]
        assert model.segments[0].band.center == 0.0
        assert model.segments[1].band.center == 100.0
        assert model.segments[0].band.upper < model.segments[1].band.lower

    def test_kmeans_degenerate_input(self):
        model = scs_fit(ScoreSeries(np.full(400, 1.0)), RunConfig(segmentation_method="kmeans"))
        assert len(model.segments) == 1
        assert model.method == "kmeans"

    def test_filter_threshold_materialized(self):
        model = scs_fit(ScoreSeries(np.arange(1.0, 101.0)), RunConfig(filter_percentile=0.95))
        assert model.filter_threshold == pytest.approx(95.05)

    def test_empty_series(self):
        with pytest.raises(ValueError, match="empty series"):
            scs_fit(ScoreSeries([]), RunConfig())

    def test_summary_lists_segments(self):
        text = scs_fit(_step(), RunConfig()).summary()
        assert "Segment [0, 500)" in text


class TestScsModel:
    """Test model invariants and point assignment."""

    def test_segments_must_partition(self):
        model = scs_fit(_step(), RunConfig())
        with pytest.raises(ValueError, match="partition"):
            ScsModel(segments=model.segments[1:], confidence_level=0.99)

    def test_points_past_fit_use_last_segment(self):
        model = scs_fit(_step(), RunConfig())
        assert list(model.segment_index(np.array([0, 499, 500, 999, 1500]))) == [0, 0, 1, 1, 1]


class TestScsDetect:
    """Test band violation and the composite rule."""

    def test_constant_series_no_anomalies(self):
        scores = ScoreSeries(np.full(1000, 3.0))
        assert scs_detect(scores, scs_fit(scores, RunConfig())).anomaly_count == 0

    def test_high_score_in_low_segment(self):
        model = scs_fit(_step(), RunConfig())
        spiked = _step().scores.copy()
        spiked[10] = 100.0
        verdicts = scs_detect(ScoreSeries(spiked), model)
        assert list(verdicts.anomaly_indices()) == [10]
        assert verdicts.segment_id[10] == 0

    def test_filter_suppresses(self):
        """Test that a band violation below the filter threshold is not final."""
        fit = _step(high=200.0)
        model = scs_fit(fit, RunConfig(filter_percentile=0.999))
        assert model.filter_threshold > 100.0
        spiked = fit.scores.copy()
        spiked[10] = 100.0
        verdicts = scs_detect(ScoreSeries(spiked), model)
        assert verdicts.raw_anomaly[10]
        assert not verdicts.final_anomaly[10]

    def test_composite_rule_fuzz(self):
        """Test final ⊆ raw ∩ pass with the filter on and final = raw with it off."""
        rng = np.random.default_rng(21)
        for _ in range(30):
            scores = ScoreSeries(np.abs(rng.normal(0, 1, 500)) + np.repeat(
                rng.uniform(0, 5, 5), 100))
            on = scs_detect(scores, scs_fit(scores, RunConfig(filter_percentile=0.9)))
            assert not np.any(on.final_anomaly & ~(on.raw_anomaly & on.percentile_pass))
            off = scs_detect(scores, scs_fit(scores, RunConfig()))
            np.testing.assert_array_equal(off.final_anomaly, off.raw_anomaly)

    def test_detect_longer_than_fit(self):
        model = scs_fit(_step(), RunConfig())
        extended = ScoreSeries(np.concatenate([_step().scores, [100.0, 0.0]]))
        verdicts = scs_detect(extended, model)
        assert not verdicts.final_anomaly[1000]
        assert verdicts.final_anomaly[1001]

    def test_online_refreshes_last_band(self):
        model = scs_fit(_step(), RunConfig())
        extended = ScoreSeries(np.concatenate([_step().scores, [100.0, 104.0, 100.5]]))
        frozen = scs_detect(extended, model)
        online = scs_detect(extended, model, online=True)
        np.testing.assert_array_equal(online.upper[:1000], frozen.upper[:1000])
        assert online.upper[1001] == 100.0
        assert online.upper[1002] == pytest.approx(100.76)
        assert online.final_anomaly[1001]
        assert frozen.final_anomaly[1002]
        assert not online.final_anomaly[1002]

    def test_online_agrees_with_stream(self):
        rng = np.random.default_rng(3)
        fit = ScoreSeries(rng.normal(0, 1, 600))
        tail = ScoreSeries(rng.normal(0.5, 2, 400))
        model = scs_fit(fit, RunConfig(filter_percentile=0.9))
        verdicts = scs_detect(ScoreSeries(np.concatenate([fit.scores, tail.scores])), model,
                              online=True)
        expected = ScsStream(model, fit).run(tail)
        np.testing.assert_array_equal(verdicts.final_anomaly[600:], expected)
        assert (verdicts.segment_id[600:] == len(model.segments) - 1).all()


class TestScsStream:
    """Test the online continuation."""

    def test_judge_then_update(self):
        fit = ScoreSeries(np.zeros(300))
        stream = ScsStream(scs_fit(fit, RunConfig()), fit)
        assert stream.update(5.0)
        assert not stream.update(0.0)

    def test_history_is_bounded(self):
        fit = ScoreSeries(np.zeros(300))
        model = scs_fit(fit, RunConfig(min_segment_length=5))
        stream = ScsStream(model, fit)
        stream.run(ScoreSeries(np.random.default_rng(0).normal(0, 1, 500)))
        assert len(stream.history) == 50
        assert stream.position == 800

    def test_fit_scores_must_match(self):
        fit = ScoreSeries(np.zeros(300))
        with pytest.raises(ValueError, match="fitted range"):
            ScsStream(scs_fit(fit, RunConfig()), ScoreSeries(np.zeros(10)))
