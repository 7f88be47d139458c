"""
Classical two-walker meeting baseline.

Both walkers take independent fair +-1 steps; walker 1 starts at 0 and walker 2
at 2d. Exact values use integer binomials (log-gamma above
EXACT_BINOMIAL_MAX_T), the Gaussian forms are the diffusion estimates.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional
import logging
import math
import os

import numpy as np
from dotenv import load_dotenv
from numpy.typing import NDArray
from scipy.special import erfc, gammaln

from src.constant import EXACT_BINOMIAL_MAX_T
from src.errors import DomainError
from src.meeting.series import overall_curve, overall_meeting

load_dotenv(override=True)

logger = logging.getLogger(__name__)

MC_WORKERS = int(os.getenv("MC_WORKERS", "4"))
MC_CHUNK_SIZE = int(os.getenv("MC_CHUNK_SIZE", "250000"))  # trials per independent sub-stream

LOG2 = math.log(2.0)


def _check(t: int, d: int) -> None:
    if t < 0 or d < 0:
        raise DomainError(f"Classical meeting needs t >= 0 and d >= 0, got t={t}, d={d}")


def _log_comb(n: int, k: int) -> float:
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def _meet_indices(t: int, m: int, d: int) -> Optional[tuple[int, int]]:
    """Right-step counts (k1, k2) that put walker 1 and walker 2 on site m, or None."""
    if (t + m) % 2 or m > t or m < 2 * d - t:
        return None
    return (t + m) // 2, (t + m - 2 * d) // 2


def cl_meet_at_exact(t: int, m: int, d: int) -> Fraction:
    _check(t, d)
    indices = _meet_indices(t, m, d)
    if indices is None:
        return Fraction(0)
    k1, k2 = indices
    return Fraction(math.comb(t, k1) * math.comb(t, k2), 4 ** t)


def cl_meet_at(t: int, m: int, d: int) -> float:
    """Probability that both walkers sit on site m after t steps."""
    _check(t, d)
    if t <= EXACT_BINOMIAL_MAX_T:
        return float(cl_meet_at_exact(t, m, d))
    indices = _meet_indices(t, m, d)
    if indices is None:
        return 0.0
    k1, k2 = indices
    return math.exp(_log_comb(t, k1) + _log_comb(t, k2) - 2 * t * LOG2)


def cl_meet_sum_exact(t: int, d: int) -> Fraction:
    """Total meeting probability as the explicit sum over meeting sites."""
    _check(t, d)
    return sum((cl_meet_at_exact(t, m, d) for m in range(2 * d - t, t + 1)), Fraction(0))


def cl_meet_total_exact(t: int, d: int) -> Fraction:
    """Closed form C(2t, t + d) / 4^t."""
    _check(t, d)
    if d > t:
        return Fraction(0)
    return Fraction(math.comb(2 * t, t + d), 4 ** t)


def cl_meet_total(t: int, d: int) -> float:
    _check(t, d)
    if d > t:
        return 0.0
    if t <= EXACT_BINOMIAL_MAX_T:
        return float(cl_meet_total_exact(t, d))
    return math.exp(_log_comb(2 * t, t + d) - 2 * t * LOG2)


def cl_meet_grid(steps: int, max_half_separation: int) -> NDArray[np.float64]:
    """cl_meet_total(t, d) for t = 0..steps and d = 0..max_half_separation, via log-gamma."""
    t = np.arange(steps + 1, dtype=np.float64)[:, None]
    d = np.arange(max_half_separation + 1, dtype=np.float64)[None, :]
    reachable = d <= t
    safe_d = np.where(reachable, d, 0.0)
    log_values = gammaln(2 * t + 1) - gammaln(t + safe_d + 1) - gammaln(t - safe_d + 1) - 2 * t * LOG2
    return np.where(reachable, np.exp(log_values), 0.0)


def cl_meet_total_gauss(t: float, d: float) -> float:
    """Diffusion estimate exp(-d^2/t) / sqrt(pi t)."""
    if t <= 0:
        raise DomainError(f"Gaussian estimate needs t > 0, got t={t}")
    return math.exp(-d * d / t) / math.sqrt(math.pi * t)


def cl_meet_total_long_time(t: float, d: float) -> float:
    """Long-time form (1 - d^2/t) / sqrt(pi t), meaningful for t > d^2."""
    if t <= 0:
        raise DomainError(f"Long-time estimate needs t > 0, got t={t}")
    return (1.0 - d * d / t) / math.sqrt(math.pi * t)


def cl_peak(d: int) -> tuple[int, float]:
    """Step of the largest cl_meet_total(t, d) and its value."""
    if d < 0:
        raise DomainError(f"Half-separation must be non-negative, got {d}")
    # M(t+1)/M(t) = (2t+2)(2t+1) / (4(t+1+d)(t+1-d)) drops to one at t = 2d^2 - 1
    t_star = max(2 * d * d - 1, 0)
    return t_star, cl_meet_total(t_star, d)


def cl_overall(T: int, d: int) -> float:
    """Exact 1 - prod_{k=max(d,1)}^{T} (1 - cl_meet_total(k, d))."""
    _check(T, d)
    if T < max(d, 1):
        return 0.0
    values = [0.0] + [cl_meet_total(k, d) for k in range(1, T + 1)]
    return overall_meeting(values, T)


def cl_overall_estimate(T: float, d: float) -> float:
    """1 - exp(-2 sqrt(T/pi) exp(-d^2/T) + 2 d erfc(d / sqrt(T)))."""
    if T <= 0:
        raise DomainError(f"Overall estimate needs T > 0, got T={T}")
    exponent = -2.0 * math.sqrt(T / math.pi) * math.exp(-d * d / T) + 2.0 * d * float(erfc(d / math.sqrt(T)))
    return -math.expm1(exponent)


def cl_overall_grid(steps: int, max_half_separation: int) -> NDArray[np.float64]:
    """Exact overall probability for T' = 1..steps (rows) and d = 0..max_half_separation (columns)."""
    grid = cl_meet_grid(steps, max_half_separation)
    return np.column_stack([overall_curve(grid[:, d]) for d in range(max_half_separation + 1)])


def _count_meetings(t: int, d: int, size: int, seed_sequence: np.random.SeedSequence) -> int:
    rng = np.random.Generator(np.random.Philox(seed_sequence))
    # walkers coincide when the right-step counts differ by exactly d
    first = rng.binomial(t, 0.5, size=size)
    second = rng.binomial(t, 0.5, size=size)
    return int(np.count_nonzero(first - second == d))


def cl_monte_carlo(
    t: int,
    d: int,
    trials: int,
    seed: int,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> float:
    """
    Fraction of `trials` in which two random walkers share a site at step t.

    Trials are cut into fixed-size chunks, each drawing from its own spawned
    Philox stream, so the estimate depends on the seed only and not on the
    worker count.
    """
    _check(t, d)
    if trials < 1:
        raise DomainError(f"Monte-Carlo needs at least one trial, got {trials}")
    if d > t:
        return 0.0
    chunk = chunk_size or MC_CHUNK_SIZE
    sizes = [min(chunk, trials - start) for start in range(0, trials, chunk)]
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    with ThreadPoolExecutor(max_workers=workers or MC_WORKERS) as pool:
        hits = sum(pool.map(lambda job: _count_meetings(t, d, *job), zip(sizes, streams)))
    logger.info(f"[MonteCarlo] t={t} d={d} trials={trials} seed={seed}: {hits} meetings")
    return hits / trials
