from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence
import logging

import numpy as np
from numpy.typing import NDArray

from src.constant import AMPLITUDE_TOLERANCE
from src.errors import DomainError

logger = logging.getLogger(__name__)


def _checked(values: Sequence[float]) -> NDArray[np.float64]:
    array = np.asarray(values, dtype=np.float64)
    if array.ndim != 1:
        raise DomainError("A meeting series must be one-dimensional")
    if np.any(~np.isfinite(array)) or np.any(array < -AMPLITUDE_TOLERANCE) or np.any(array > 1.0 + AMPLITUDE_TOLERANCE):
        bad = array[~((array >= -AMPLITUDE_TOLERANCE) & (array <= 1.0 + AMPLITUDE_TOLERANCE))]
        raise DomainError(f"Meeting probabilities must lie in [0, 1], got {bad[:3].tolist()}")
    return np.clip(array, 0.0, 1.0)


def overall_curve(values: Sequence[float]) -> NDArray[np.float64]:
    """
    Overall meeting probability 1 - prod_{t=1}^{T'} (1 - M(t)) for T' = 1..T.

    `values[t]` is M(t); values[0] is M(0) and stays out of the product.
    """
    array = _checked(values)
    with np.errstate(divide="ignore"):
        log_miss = np.cumsum(np.log1p(-array[1:]))
    return -np.expm1(log_miss)


def overall_meeting(values: Sequence[float], T: Optional[int] = None) -> float:
    """Overall meeting probability up to step T (default: the last entry of `values`)."""
    array = _checked(values)
    last = len(array) - 1 if T is None else T
    if last < 0 or last >= len(array):
        raise DomainError(f"T={last} outside the series range 0..{len(array) - 1}")
    if last == 0:
        return 0.0
    return float(overall_curve(array[:last + 1])[-1])


@dataclass(frozen=True, eq=False)
class MeetingSeries:
    """M(t) for t = 0..T and the overall probability for T' = 1..T."""
    values: NDArray[np.float64]
    overall: NDArray[np.float64]

    @property
    def steps(self) -> int:
        return len(self.values) - 1

    @property
    def times(self) -> NDArray[np.int64]:
        return np.arange(len(self.values))

    def at(self, t: int) -> float:
        return float(self.values[t])

    def overall_at(self, T: int) -> float:
        return 0.0 if T == 0 else float(self.overall[T - 1])

    def peak(self) -> tuple[int, float]:
        t = int(np.argmax(self.values))
        return t, float(self.values[t])

    def window(self, start: int, stop: int) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """Times and values for start <= t <= stop."""
        return self.times[start:stop + 1], self.values[start:stop + 1]
