"""
Unit Tests for Detection Report Module
======================================

Author: Adaptive Thresholds Project
Date: October 2026
"""

import json

import pytest

from src.core.config import RunConfig
from src.core.model import ConfusionCounts, MetricSet
from src.dataio.report import DetectionReport, MethodResult, read_report, write_report


def _report(deltas=None):
    result = MethodResult(anomaly_indices=[3, 17],
                          confusion=ConfusionCounts(tp=1, fp=1, tn=7, fn=1),
                          metrics=MetricSet(accuracy=0.8, precision=0.5, recall=0.5, f1=0.5))
    return DetectionReport(config=RunConfig(seed=11).to_dict(),
                           methods={"macs@0.99": result, "baseline": MethodResult()},
                           deltas=deltas)


class TestWriteReport:
    """Test serialization and the read-back round trip."""

    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "report.json")
        report = _report(deltas={"macs@0.99": {"accuracy": 0.1, "precision": -0.2,
                                               "recall": 1 / 3, "f1": 0.25}})
        write_report(report, path)
        assert read_report(path) == report

    def test_empty_anomaly_list_is_array(self, tmp_path):
        path = tmp_path / "report.json"
        write_report(_report(), str(path))
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["methods"]["baseline"]["anomaly_indices"] == []

    def test_deltas_absent_without_baseline(self, tmp_path):
        path = tmp_path / "report.json"
        write_report(_report(), str(path))
        data = json.loads(path.read_text(encoding="utf-8"))
        assert "deltas" not in data
        assert sorted(data) == ["config", "methods"]

    def test_keys_sorted_and_seed_echoed(self, tmp_path):
        path = tmp_path / "report.json"
        write_report(_report(), str(path))
        text = path.read_text(encoding="utf-8")
        assert text.index('"baseline"') < text.index('"macs@0.99"')
        assert json.loads(text)["config"]["seed"] == 11

    def test_unlabeled_result_has_no_metrics(self):
        assert MethodResult(anomaly_indices=[1]).to_dict() == {"anomaly_indices": [1]}

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(OSError, match="cannot write report"):
            write_report(_report(), str(tmp_path / "missing" / "report.json"))

    def test_floats_read_back_bit_exact(self, tmp_path):
        path = tmp_path / "report.json"
        deltas = {"accuracy": 0.1 + 0.2, "precision": 1 / 3, "recall": 2 / 3, "f1": 1e-17}
        write_report(_report(deltas={"macs@0.99": deltas}), str(path))
        text = path.read_text(encoding="utf-8")
        assert "0.30000000000000004" in text
        written = json.loads(text)["deltas"]["macs@0.99"]
        for name, value in deltas.items():
            assert written[name] == float("%.17g" % value)


class TestSummary:
    """Test the one-line summary."""

    def test_summary(self):
        text = _report().summary()
        assert text.startswith("baseline: 0 anomalies")
        assert "macs@0.99: 2 anomalies (f1=0.5000)" in text
