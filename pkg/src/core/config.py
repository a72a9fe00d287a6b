"""
Run Configuration Module
========================

RunConfig gathers every tunable of the detection pipeline: confidence
level, segmentation method, MACS windows, percentile filter, baseline
percentile, scorer and seed. Values are validated on construction and
may be loaded from a YAML file and overridden from the command line.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional, Tuple, Union
import logging

import yaml

from src.scoring.scorers import ScorerSpec

logger = logging.getLogger(__name__)

SEGMENTATION_METHODS = ("apca", "kmeans")
DECISION_RULES = ("regime", "vote")
FILTER_AUTO = "auto"
MAX_SEED = 2**64 - 1


class ConfigError(ValueError):
    """Raised when a configuration value is out of range."""
    pass


@dataclass(frozen=True)
class RunConfig:
    """
    Every tunable of a detection run.

    Attributes:
        confidence_level (float): Confidence level in (0, 1), e.g. 0.99 or 0.95
        segmentation_method (str): 'apca' or 'kmeans' (SCS only)
        n_segments (int): K-means cluster count k
        min_segment_length (int): Minimum SCS segment length
        windows (Tuple[int, int, int]): MACS (short, medium, long), strictly increasing
        filter_percentile (Optional[Union[float, str]]): Global percentile gate,
            None = disabled, 'auto' = (1 + confidence_level) / 2
        baseline_percentile (float): Percentile of the static baseline threshold
        scorer (ScorerSpec): Scorer applied to the raw series
        seed (int): Seed for every randomized step, 0 <= seed < 2**64
        split (float): Train fraction for baseline fit and SCS segmentation
        violation_threshold (int): Scale votes needed for a MACS threshold violation
        decision_rule (str): 'regime' (regime-aware) or 'vote' (votes only)
        kmeans_window (Optional[int]): Feature window, default max(20, n // 50)
        kmeans_stride (Optional[int]): Window stride, default window // 2
        kmeans_max_iters (int): Lloyd iteration cap
        quantile_window (int): Trailing window of the rolling-quantile baseline
    """
    confidence_level: float = 0.99
    segmentation_method: str = "apca"
    n_segments: int = 5
    min_segment_length: int = 10
    windows: Tuple[int, int, int] = (50, 100, 500)
    filter_percentile: Optional[Union[float, str]] = None
    baseline_percentile: float = 0.99
    scorer: ScorerSpec = field(default_factory=ScorerSpec)
    seed: int = 0
    split: float = 0.7
    violation_threshold: int = 2
    decision_rule: str = "regime"
    kmeans_window: Optional[int] = None
    kmeans_stride: Optional[int] = None
    kmeans_max_iters: int = 100
    quantile_window: int = 500

    def __post_init__(self):
        object.__setattr__(self, "windows", tuple(int(w) for w in self.windows))

        if not 0.0 < self.confidence_level < 1.0:
            raise ConfigError("confidence out of range")
        if self.segmentation_method not in SEGMENTATION_METHODS:
            raise ConfigError(
                f"Unknown segmentation method '{self.segmentation_method}', "
                f"expected one of {SEGMENTATION_METHODS}"
            )
        if self.n_segments < 1:
            raise ConfigError("n_segments must be a positive integer")
        if self.min_segment_length < 1:
            raise ConfigError("min_segment_length must be a positive integer")
        if len(self.windows) != 3:
            raise ConfigError("windows must be (short, medium, long)")
        short, medium, long_ = self.windows
        if short < 1 or not short < medium < long_:
            raise ConfigError("windows must be positive and strictly increasing")
        if isinstance(self.filter_percentile, str):
            if self.filter_percentile != FILTER_AUTO:
                raise ConfigError(
                    f"filter percentile must be a number or '{FILTER_AUTO}', "
                    f"got '{self.filter_percentile}'")
        elif self.filter_percentile is not None and not 0.0 < self.filter_percentile < 1.0:
            raise ConfigError("filter percentile out of range")
        if not 0.0 < self.baseline_percentile < 1.0:
            raise ConfigError("baseline percentile out of range")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not 0.0 < self.split < 1.0:
            raise ConfigError("split out of range")
        if not 1 <= self.violation_threshold <= 3:
            raise ConfigError("violation_threshold must be 1, 2 or 3")
        if self.decision_rule not in DECISION_RULES:
            raise ConfigError(
                f"Unknown decision rule '{self.decision_rule}', expected one of {DECISION_RULES}"
            )
        if self.kmeans_window is not None and self.kmeans_window < 2:
            raise ConfigError("kmeans_window must be at least 2")
        if self.kmeans_stride is not None and self.kmeans_stride < 1:
            raise ConfigError("kmeans_stride must be a positive integer")
        if (self.kmeans_window is not None and self.kmeans_stride is not None
                and self.kmeans_stride > self.kmeans_window):
            raise ConfigError("kmeans_stride cannot exceed kmeans_window")
        if self.kmeans_max_iters < 1:
            raise ConfigError("kmeans_max_iters must be a positive integer")
        if self.quantile_window < 2:
            raise ConfigError("quantile_window must be at least 2")

    @property
    def scorer_id(self) -> str:
        return self.scorer.scorer_id

    @property
    def filter_enabled(self) -> bool:
        return self.filter_percentile is not None

    @property
    def resolved_filter_percentile(self) -> Optional[float]:
        """
        Filter percentile as a number.

        'auto' gates at the upper tail matching a two-sided confidence
        level, (1 + confidence_level) / 2, e.g. 0.975 at 0.95.
        """
        if self.filter_percentile == FILTER_AUTO:
            return (1.0 + self.confidence_level) / 2.0
        return self.filter_percentile

    def replace(self, **overrides: Any) -> 'RunConfig':
        """Return a validated copy with the given fields replaced."""
        return replace(self, **overrides)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to a plain dictionary (the report's config echo).

        Returns:
            Dict: Field values plus a 'filter' section
        """
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["windows"] = list(self.windows)
        data["scorer"] = self.scorer.to_dict()
        data["scorer_id"] = self.scorer_id
        data["filter"] = {"enabled": self.filter_enabled,
                          "percentile": self.resolved_filter_percentile}
        if self.filter_percentile == FILTER_AUTO:
            data["filter"]["auto"] = True
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        """
        Create a config from a dictionary, ignoring derived keys.

        Raises:
            ConfigError: On unknown keys or out-of-range values
        """
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in data.items() if k not in ("filter", "scorer_id")}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
        if isinstance(values.get("scorer"), dict):
            try:
                values["scorer"] = ScorerSpec(**values["scorer"])
            except TypeError as exc:
                raise ConfigError(f"Invalid scorer section: {exc}") from exc
        if "windows" in values:
            values["windows"] = tuple(values["windows"])
        return cls(**values)

    @classmethod
    def from_yaml(cls, path: str) -> 'RunConfig':
        """
        Load a config from a YAML document whose keys mirror the fields.

        Args:
            path (str): YAML file path

        Returns:
            RunConfig: Validated configuration
        """
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = yaml.safe_load(fh) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"Cannot parse configuration file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"Configuration file {path} must contain a mapping")
        logger.debug("Loaded configuration from %s: %s", path, sorted(data))
        return cls.from_dict(data)
