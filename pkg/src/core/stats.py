"""
Numeric Conventions Module
==========================

This module freezes the two statistical conventions every other module
relies on:

- percentile: linear interpolation between closest ranks
- sample standard deviation: denominator (n - 1), zero for n <= 1

All other modules must call these definitions rather than reaching for
numpy directly, so that golden values stay bit-stable across the package.

Author: Adaptive Thresholds Project
Date: October 2026
"""

from typing import Sequence, Union
import numpy as np


ArrayLike = Union[Sequence[float], np.ndarray]


def as_array(values: ArrayLike) -> np.ndarray:
    """Return values as a 1-D float64 array (no copy when already one)."""
    return np.asarray(values, dtype=np.float64).reshape(-1)


def percentile(values: ArrayLike, p: float) -> float:
    """
    Percentile with linear interpolation between closest ranks.

    Sort ascending, rank r = p·(n−1), return
    v[⌊r⌋] + (r−⌊r⌋)·(v[⌈r⌉]−v[⌊r⌋]).

    Args:
        values: Nonempty sample of finite reals
        p (float): Fraction in [0, 1]

    Returns:
        float: The interpolated percentile

    Raises:
        ValueError: If the sample is empty or p is outside [0, 1]

    Example:
        >>> percentile(range(100), 0.99)
        98.01
    """
    arr = as_array(values)
    if arr.size == 0:
        raise ValueError("empty sample")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Percentile fraction must be in [0, 1], got {p}")
    return float(np.quantile(arr, p, method="linear"))


def sample_std(values: ArrayLike) -> float:
    """
    Sample standard deviation (ddof = 1).

    Args:
        values: Sample of finite reals (may be empty)

    Returns:
        float: Standard deviation, 0.0 when fewer than two values
    """
    arr = as_array(values)
    if arr.size <= 1:
        return 0.0
    # Exact zero on constant input, np.std can leave a few ulps behind
    if np.all(arr == arr[0]):
        return 0.0
    return float(np.std(arr, ddof=1))


def mean(values: ArrayLike) -> float:
    """Arithmetic mean of a nonempty sample."""
    arr = as_array(values)
    if arr.size == 0:
        raise ValueError("empty sample")
    if np.all(arr == arr[0]):
        return float(arr[0])
    return float(np.mean(arr))
