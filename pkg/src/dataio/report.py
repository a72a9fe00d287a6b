"""
Detection Report Module
=======================

JSON-shaped run report:

    {
      "config":  {... RunConfig echo, seed included ...},
      "methods": {name: {"anomaly_indices": [...], "confusion": {...}, "metrics": {...}}},
      "deltas":  {name: {"accuracy": ..., "precision": ..., "recall": ..., "f1": ...}}
    }

'confusion' and 'metrics' are present only when labels were available;
'deltas' only when a baseline was run. Keys are written sorted so two
reports of the same run diff cleanly.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import json
import logging

from src.core.model import ConfusionCounts, MetricSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MethodResult:
    """Outcome of one detector on one series."""
    anomaly_indices: List[int] = field(default_factory=list)
    confusion: Optional[ConfusionCounts] = None
    metrics: Optional[MetricSet] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"anomaly_indices": [int(i) for i in self.anomaly_indices]}
        if self.confusion is not None:
            data["confusion"] = self.confusion.to_dict()
        if self.metrics is not None:
            data["metrics"] = self.metrics.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MethodResult':
        confusion = data.get("confusion")
        metric_set = data.get("metrics")
        return cls(anomaly_indices=[int(i) for i in data.get("anomaly_indices", [])],
                   confusion=ConfusionCounts.from_dict(confusion) if confusion else None,
                   metrics=MetricSet.from_dict(metric_set) if metric_set else None)


@dataclass(frozen=True)
class DetectionReport:
    """
    Everything a run writes to disk.

    Attributes:
        config (Dict[str, Any]): Configuration echo
        methods (Dict[str, MethodResult]): Per-method results
        deltas (Optional[Dict[str, Dict[str, float]]]): Improvements over the baseline
    """
    config: Dict[str, Any]
    methods: Dict[str, MethodResult] = field(default_factory=dict)
    deltas: Optional[Dict[str, Dict[str, float]]] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {"config": self.config,
                "methods": {name: result.to_dict() for name, result in self.methods.items()}}
        if self.deltas is not None:
            data["deltas"] = self.deltas
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DetectionReport':
        methods = {name: MethodResult.from_dict(result)
                   for name, result in data.get("methods", {}).items()}
        return cls(config=data.get("config", {}), methods=methods, deltas=data.get("deltas"))

    def summary(self) -> str:
        """One line per method: anomaly count, and F1 when known."""
        parts = []
        for name in sorted(self.methods):
            result = self.methods[name]
            text = f"{name}: {len(result.anomaly_indices)} anomalies"
            if result.metrics is not None:
                text += f" (f1={result.metrics.f1:.4f})"
            parts.append(text)
        return "; ".join(parts)


def write_report(report: DetectionReport, path: str) -> None:
    """
    Write a report as sorted, indented JSON.

    Floats go out as the shortest text that reads back to the same
    double, so they carry exactly the value of a %.17g rendering.

    Raises:
        OSError: If the file cannot be written (message names the path)
    """
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True, allow_nan=False)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write report {path}: {exc.strerror}") from exc
    logger.debug("Report written to %s", path)


def read_report(path: str) -> DetectionReport:
    """Read a report written by write_report."""
    with open(path, "r", encoding="utf-8") as fh:
        return DetectionReport.from_dict(json.load(fh))
