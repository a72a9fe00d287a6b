"""
Synthetic Series Module
=======================

Deterministic generator of labeled nonstationary series: piecewise
Gaussian regimes with injected point anomalies and an optional level
burst. The only randomness source is numpy's PCG64 generator seeded
from the SynthSpec, so identical SynthSpecs give bit-identical output.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple
import logging

import numpy as np

from src.core.model import LabelSeries, TimeSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Regime:
    """A stationary stretch of the synthetic series."""
    length: int
    mean: float
    std: float

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("Regime length must be a positive integer")
        if self.std < 0:
            raise ValueError("Regime std cannot be negative")


@dataclass(frozen=True)
class Burst:
    """A contiguous run shifted by `offset` and labeled anomalous."""
    start: int
    length: int
    offset: float

    def __post_init__(self):
        if self.start < 0 or self.length < 1:
            raise ValueError("Burst needs start >= 0 and length >= 1")


@dataclass(frozen=True)
class SynthSpec:
    """
    Synthetic series description.

    Attributes:
        n (int): Series length
        regimes (Tuple[Regime, ...]): Consecutive regimes, lengths summing to n
        anomaly_rate (float): Fraction of injected point anomalies in [0, 1)
        anomaly_magnitude_sigmas (float): Anomaly size in regime standard deviations
        burst (Optional[Burst]): Optional shifted run
        seed (int): PRNG seed
    """
    n: int
    regimes: Tuple[Regime, ...]
    anomaly_rate: float = 0.01
    anomaly_magnitude_sigmas: float = 6.0
    burst: Optional[Burst] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "regimes", tuple(self.regimes))
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not self.regimes:
            raise ValueError("At least one regime is required")
        total = sum(r.length for r in self.regimes)
        if total != self.n:
            raise ValueError(f"inconsistent regime lengths: they sum to {total}, n is {self.n}")
        if not 0.0 <= self.anomaly_rate < 1.0:
            raise ValueError("rate must be in [0, 1)")
        if self.anomaly_magnitude_sigmas <= 0:
            raise ValueError("magnitude must be positive")
        if self.burst is not None and self.burst.start + self.burst.length > self.n:
            raise ValueError("Burst runs past the end of the series")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")

    @property
    def regime_starts(self) -> List[int]:
        starts, offset = [], 0
        for regime in self.regimes:
            starts.append(offset)
            offset += regime.length
        return starts

    @classmethod
    def parse_regimes(cls, text: str) -> Tuple[Regime, ...]:
        """
        Parse 'len:mean:std,...' into regimes.

        Raises:
            ValueError: On a malformed entry
        """
        regimes = []
        for entry in text.split(","):
            parts = entry.strip().split(":")
            if len(parts) != 3:
                raise ValueError(f"malformed regime '{entry}', expected len:mean:std")
            try:
                regimes.append(Regime(int(parts[0]), float(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise ValueError(f"malformed regime '{entry}': {exc}") from None
        return tuple(regimes)


def generate(spec: SynthSpec) -> Tuple[TimeSeries, LabelSeries]:
    """
    Draw a labeled series from a SynthSpec.

    Noise is drawn regime by regime; then ⌊rate·n⌋ anomaly positions are
    drawn without replacement from the indices that do not start a regime,
    and the k-th drawn position is shifted by (−1)^k · magnitude · regime std.

    Returns:
        Tuple[TimeSeries, LabelSeries]: Values and ground truth
    """
    rng = np.random.default_rng(spec.seed)
    values = np.empty(spec.n)
    regime_std = np.empty(spec.n)
    for start, regime in zip(spec.regime_starts, spec.regimes):
        stop = start + regime.length
        values[start:stop] = rng.normal(regime.mean, regime.std, regime.length)
        regime_std[start:stop] = regime.std
    labels = np.zeros(spec.n, dtype=bool)

    count = int(np.floor(spec.anomaly_rate * spec.n))
    if count:
        candidates = np.setdiff1d(np.arange(spec.n), spec.regime_starts)
        if count > candidates.size:
            raise ValueError("Too many anomalies for the series length")
        positions = rng.choice(candidates, size=count, replace=False)
        signs = np.where(np.arange(count) % 2 == 0, 1.0, -1.0)
        values[positions] += signs * spec.anomaly_magnitude_sigmas * regime_std[positions]
        labels[positions] = True

    if spec.burst is not None:
        run = slice(spec.burst.start, spec.burst.start + spec.burst.length)
        values[run] += spec.burst.offset
        labels[run] = True

    logger.debug("Generated %d points, %d labeled anomalies", spec.n, int(labels.sum()))
    return TimeSeries(values=values), LabelSeries(labels)
