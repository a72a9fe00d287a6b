"""
Unit Tests for Anomaly Scoring Module
=====================================

Author: Adaptive Thresholds Project
Date: October 2026
"""

import numpy as np
import pytest

from src.scoring.scorers import ScorerSpec, deseasonalize, score


class TestScorerSpec:
    """Test scorer selection."""

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="Unknown scorer"):
            ScorerSpec(kind="autoencoder")

    def test_scorer_ids(self):
        assert ScorerSpec(kind="identity").scorer_id == "identity"
        assert ScorerSpec(kind="rolling_residual", window=7).scorer_id == "rolling_residual[7]"
        assert ScorerSpec(kind="abs_diff", seasonal_lag=12).scorer_id == \
            "deseasonalize[12]+abs_diff"


class TestScore:
    """Test the three scorers."""

    def test_identity(self):
        result = score([1.0, 2.0, 4.0, 7.0], ScorerSpec(kind="identity"))
        assert list(result.scores) == [1.0, 2.0, 4.0, 7.0]
        assert result.scorer_id == "identity"

    def test_abs_diff(self):
        result = score([1.0, 2.0, 4.0, 7.0], ScorerSpec(kind="abs_diff"))
        assert list(result.scores) == [0.0, 1.0, 2.0, 3.0]

    def test_abs_diff_single_point(self):
        assert list(score([5.0], ScorerSpec(kind="abs_diff")).scores) == [0.0]

    def test_rolling_residual(self):
        """Test |x − trailing mean| with a window of 2."""
        result = score([1.0, 3.0, 3.0, 7.0], ScorerSpec(kind="rolling_residual", window=2))
        np.testing.assert_allclose(result.scores, [0.0, 1.0, 0.0, 2.0])

    def test_constant_series_scores_zero(self):
        for kind in ("abs_diff", "rolling_residual"):
            result = score(np.full(30, 3.3), ScorerSpec(kind=kind, window=5))
            assert np.all(result.scores == 0.0)

    def test_empty_series(self):
        with pytest.raises(ValueError, match="empty series"):
            score([], ScorerSpec())

    def test_seasonal_lag_applied_first(self):
        """Test that a perfectly periodic series scores zero after differencing."""
        series = np.tile([1.0, 5.0, 2.0], 10)
        result = score(series, ScorerSpec(kind="identity", seasonal_lag=3))
        assert np.all(result.scores == 0.0)


class TestDeseasonalize:
    """Test seasonal differencing."""

    def test_first_lag_outputs_zero(self):
        out = deseasonalize([1.0, 2.0, 4.0, 8.0], 2)
        assert list(out) == [0.0, 0.0, 3.0, 6.0]

    def test_lag_exceeds_series(self):
        with pytest.raises(ValueError, match="lag exceeds series"):
            deseasonalize([1.0, 2.0], 2)
