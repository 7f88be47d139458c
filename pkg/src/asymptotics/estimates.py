from __future__ import annotations

from typing import Sequence
import logging
import math

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad
from scipy.special import elliprf

from src.asymptotics.elliptic import meeting_closed_form, _check_kind
from src.constant import QUAD_ABS_TOLERANCE, QUAD_LIMIT, QUAD_REL_TOLERANCE, SQRT2
from src.errors import DomainError

logger = logging.getLogger(__name__)


def k_exact(t: float, d: int) -> float:
    """K(a) at the imaginary modulus a = i k, k = sqrt(t^2/(2 d^2) - 1), via K(ik) = K(k/sqrt(1+k^2)) / sqrt(1+k^2)."""
    if d < 1:
        raise DomainError(f"K(a) needs d >= 1, got d={d}")
    if t < SQRT2 * d:
        raise DomainError(f"K(a) needs t >= sqrt(2) d, got t={t}, d={d}")
    k_squared = t * t / (2.0 * d * d) - 1.0
    scale = math.sqrt(1.0 + k_squared)
    modulus_squared = k_squared / (1.0 + k_squared)
    return float(elliprf(0.0, 1.0 - modulus_squared, 1.0)) / scale


def k_asymptotic(t: float, d: int) -> float:
    """d sqrt(2) ln(2 sqrt(2) t / d) / t, the large-t behaviour of K(a)."""
    if d < 1 or t <= 0:
        raise DomainError(f"K asymptotic needs d >= 1 and t > 0, got t={t}, d={d}")
    return d * SQRT2 * math.log(2.0 * SQRT2 * t / d) / t


def leading_order(t: float, d: int, prefactor: float) -> float:
    """prefactor * ln(2 sqrt(2) t / d) / t, or prefactor * ln(t) / t for walkers started together."""
    if d < 0 or t <= max(d, 0):
        raise DomainError(f"Leading-order law needs t > d >= 0, got t={t}, d={d}")
    if d == 0:
        return prefactor * math.log(t) / t
    return prefactor * math.log(2.0 * SQRT2 * t / d) / t


def overall_exponent(kind, T: float, d: int) -> float:
    """int_{sqrt(2) d}^{T} M(t, d) dt over the closed-form estimate."""
    kind = _check_kind(kind)
    start = SQRT2 * d
    if d < 1:
        raise DomainError(f"Overall estimate needs d >= 1, got d={d}")
    if T <= start:
        raise DomainError(f"Overall estimate needs T > sqrt(2) d = {start:.6g}, got T={T}")
    value, _ = quad(
        lambda t: meeting_closed_form(kind, t, d), start, T,
        epsabs=QUAD_ABS_TOLERANCE, epsrel=QUAD_REL_TOLERANCE, limit=QUAD_LIMIT,
    )
    return value


def overall_estimate_quantum(kind, T: float, d: int) -> float:
    """1 - exp(-int_{sqrt(2) d}^{T} M(t, d) dt)."""
    return -math.expm1(-overall_exponent(kind, T, d))


def overall_estimate_curve(kind, Ts: Sequence[float], d: int) -> NDArray[np.float64]:
    """overall_estimate_quantum on an increasing grid of T, accumulating the integral piece by piece."""
    kind = _check_kind(kind)
    grid = np.asarray(Ts, dtype=np.float64)
    if grid.size == 0:
        return grid
    if np.any(np.diff(grid) <= 0):
        raise DomainError("T grid must be strictly increasing")
    exponents = np.empty(grid.size)
    exponents[0] = overall_exponent(kind, float(grid[0]), d)
    for i in range(1, grid.size):
        piece, _ = quad(
            lambda t: meeting_closed_form(kind, t, d), float(grid[i - 1]), float(grid[i]),
            epsabs=QUAD_ABS_TOLERANCE, epsrel=QUAD_REL_TOLERANCE, limit=QUAD_LIMIT,
        )
        exponents[i] = exponents[i - 1] + piece
    logger.debug(f"[OverallEstimate] kind={kind.value} d={d} T={grid[0]}..{grid[-1]}")
    return -np.expm1(-exponents)
