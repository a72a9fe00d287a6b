"""
Unit Tests for Synthetic Series Module
======================================

Author: Adaptive Thresholds Project
Date: October 2026
"""

import numpy as np
import pytest

from src.dataio.synth import Burst, Regime, SynthSpec, generate


def _spec(**overrides):
    values = dict(n=1000, regimes=(Regime(1000, 0.0, 1.0),), anomaly_rate=0.01,
                  anomaly_magnitude_sigmas=6.0, seed=7)
    values.update(overrides)
    return SynthSpec(**values)


class TestSynthSpec:
    """Test SynthSpec validation and regime parsing."""

    def test_regime_lengths_must_sum(self):
        with pytest.raises(ValueError, match="inconsistent regime lengths"):
            _spec(regimes=(Regime(400, 0, 1), Regime(500, 5, 1)))

    def test_rate_below_one(self):
        with pytest.raises(ValueError, match="rate"):
            _spec(anomaly_rate=1.0)

    def test_burst_inside_series(self):
        with pytest.raises(ValueError, match="Burst"):
            _spec(burst=Burst(start=990, length=20, offset=5.0))

    def test_parse_regimes(self):
        regimes = SynthSpec.parse_regimes("500:0:1,500:50:2.5")
        assert regimes == (Regime(500, 0.0, 1.0), Regime(500, 50.0, 2.5))

    @pytest.mark.parametrize("text", ["500:0", "a:0:1", "500:0:1,", "10:0:-1"])
    def test_malformed_regimes(self, text):
        with pytest.raises(ValueError):
            SynthSpec.parse_regimes(text)

    def test_regime_starts(self):
        spec = _spec(regimes=(Regime(300, 0, 1), Regime(700, 3, 1)))
        assert spec.regime_starts == [0, 300]


class TestGenerate:
    """Test the generator's labels, levels and determinism."""

    def test_no_anomalies(self):
        _, labels = generate(_spec(anomaly_rate=0.0))
        assert labels.anomaly_count == 0

    def test_anomaly_count(self):
        _, labels = generate(_spec())
        assert labels.anomaly_count == 10

    def test_regime_means(self):
        spec = _spec(regimes=(Regime(500, 0.0, 1.0), Regime(500, 100.0, 1.0)),
                     anomaly_rate=0.0)
        series, _ = generate(spec)
        tolerance = 5 / np.sqrt(500)
        assert abs(series.values[:500].mean()) < tolerance
        assert abs(series.values[500:].mean() - 100.0) < tolerance

    def test_regime_starts_never_anomalous(self):
        spec = _spec(regimes=(Regime(10, 0, 1), Regime(10, 5, 1), Regime(10, 9, 1)),
                     n=30, anomaly_rate=0.9)
        _, labels = generate(spec)
        assert labels.anomaly_count == 27
        assert not labels.labels[[0, 10, 20]].any()

    def test_anomaly_signs_alternate(self):
        """Test that anomalies are shifted up and down in draw order."""
        spec = _spec(regimes=(Regime(1000, 0.0, 0.01),), anomaly_rate=0.02,
                     anomaly_magnitude_sigmas=20.0)
        series, labels = generate(spec)
        shifted = series.values[labels.labels]
        assert np.sum(shifted > 0.1) == 10
        assert np.sum(shifted < -0.1) == 10

    def test_burst(self):
        spec = _spec(anomaly_rate=0.0, burst=Burst(start=100, length=20, offset=30.0))
        series, labels = generate(spec)
        assert labels.anomaly_count == 20
        assert labels.labels[100:120].all()
        assert series.values[100:120].mean() > 25.0

    def test_deterministic(self):
        first, first_labels = generate(_spec())
        second, second_labels = generate(_spec())
        assert first.values.tobytes() == second.values.tobytes()
        assert first_labels.labels.tobytes() == second_labels.labels.tobytes()

    def test_seed_changes_output(self):
        first, _ = generate(_spec(seed=1))
        second, _ = generate(_spec(seed=2))
        assert not np.array_equal(first.values, second.values)
