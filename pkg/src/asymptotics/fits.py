"""Least-squares fits used to compare simulated series against the asymptotic laws."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
import math

import numpy as np
from numpy.typing import NDArray
from scipy.stats import linregress

from src.constant import SQRT2
from src.errors import DomainError


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


def _regress(x: NDArray[np.float64], y: NDArray[np.float64]) -> FitResult:
    if x.size < 3:
        raise DomainError(f"A fit needs at least three points, got {x.size}")
    result = linregress(x, y)
    return FitResult(float(result.slope), float(result.intercept), float(result.rvalue ** 2))


def moving_average(values: Sequence[float], window: int) -> NDArray[np.float64]:
    """Mean over sliding windows of `window` consecutive values; length shrinks by window - 1."""
    data = np.asarray(values, dtype=np.float64)
    if window < 1 or window > data.size:
        raise DomainError(f"Window must lie in [1, {data.size}], got {window}")
    kernel = np.full(window, 1.0 / window)
    return np.convolve(data, kernel, mode="valid")


def _smoothed_pairs(times: Sequence[float], values: Sequence[float], window: int):
    t = moving_average(times, window)
    v = moving_average(values, window)
    keep = (t > 0) & (v > 0)
    return t[keep], v[keep]


def fit_power_law(times: Sequence[float], values: Sequence[float], window: int = 1) -> FitResult:
    """Straight line through (ln t, ln value) after smoothing out the parity oscillation."""
    t, v = _smoothed_pairs(times, values, window)
    return _regress(np.log(t), np.log(v))


def fit_linear(xs: Sequence[float], ys: Sequence[float]) -> FitResult:
    return _regress(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64))


def fit_leading_order(
    times: Sequence[float],
    values: Sequence[float],
    d: int,
    window: int = 12,
) -> tuple[float, float]:
    """
    Prefactor b of value ~ b ln(2 sqrt(2) t / d) / t (ln t / t when d = 0).

    Returns the mean of value * t / ln(...) over the smoothed range together
    with its spread (max - min) / mean.
    """
    t, v = _smoothed_pairs(times, values, window)
    logs = np.log(t) if d == 0 else np.log(2.0 * SQRT2 * t / d)
    keep = logs > 0
    if np.count_nonzero(keep) < 3:
        raise DomainError("Too few points where the logarithm is positive")
    ratios = v[keep] * t[keep] / logs[keep]
    mean = float(np.mean(ratios))
    return mean, float((np.max(ratios) - np.min(ratios)) / mean)


def fit_log_square(Ts: Sequence[float], overall: Sequence[float]) -> FitResult:
    """Regress -ln(1 - overall) on ln(T)^2; the slope estimates the growth rate of the exponent."""
    grid = np.asarray(Ts, dtype=np.float64)
    values = np.asarray(overall, dtype=np.float64)
    keep = (grid > 1) & (values < 1)
    if not math.isfinite(float(np.sum(values[keep]))):
        raise DomainError("Overall probabilities must be finite")
    return _regress(np.log(grid[keep]) ** 2, -np.log1p(-values[keep]))
