"""
Bosonic and fermionic walkers in the factorized-amplitude regime.

With psi_ij(m, n) = psi1_i(m) psi2_j(n) the diagonal detection probabilities
reduce to

    boson:   2|psi1L psi2L|^2 + 2|psi1R psi2R|^2 + |psi1L psi2R + psi1R psi2L|^2
    fermion: |psi1L psi2R - psi1R psi2L|^2

Two walkers in one and the same state carry the extra 1/sqrt(2) of the
doubly occupied boson mode, which halves the boson value.
"""
from __future__ import annotations

from enum import Enum
from typing import Optional
import logging

import numpy as np
from numpy.typing import NDArray

from src.constant import AMPLITUDE_TOLERANCE
from src.errors import DomainError
from src.meeting.distinguishable import JointState, TwoWalkerSpec
from src.meeting.series import MeetingSeries, overall_curve
from src.walk import CoinOperator, WalkerState, init_localized, overlap, trajectory

logger = logging.getLogger(__name__)


class ExchangeClass(str, Enum):
    BOSON = "boson"
    FERMION = "fermion"


def same_state(first: WalkerState, second: WalkerState) -> bool:
    """Bitwise identity of two walker states."""
    return first is second or (
        first.origin == second.origin
        and first.time == second.time
        and np.array_equal(first.amplitudes, second.amplitudes)
    )


def _diagonal_values(stat: ExchangeClass, ll, lr, rl, rr) -> NDArray[np.float64]:
    if stat is ExchangeClass.BOSON:
        return 2 * np.abs(ll) ** 2 + 2 * np.abs(rr) ** 2 + np.abs(lr + rl) ** 2
    return np.abs(lr - rl) ** 2


def meeting_profile_indist(stat: ExchangeClass, first: WalkerState, second: WalkerState) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    if first.time != second.time:
        raise DomainError(f"Walkers must be at equal times, got t={first.time} and t={second.time}")
    lo, hi = max(first.lowest, second.lowest), min(first.highest, second.highest)
    if lo > hi:
        return np.arange(0), np.zeros(0)
    positions = np.arange(lo, hi + 1)
    if stat is ExchangeClass.FERMION and same_state(first, second):
        return positions, np.zeros(len(positions))
    a, b = first.window(lo, hi), second.window(lo, hi)
    values = _diagonal_values(stat, a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    if stat is ExchangeClass.BOSON and same_state(first, second):
        values = 0.5 * values
    return positions, values


def meeting_at_indist(stat: ExchangeClass, first: WalkerState, second: WalkerState, m: int) -> float:
    positions, values = meeting_profile_indist(stat, first, second)
    if positions.size == 0 or m < positions[0] or m > positions[-1]:
        return 0.0
    return float(values[m - positions[0]])


def _require_factorized(spec: TwoWalkerSpec) -> None:
    if spec.is_entangled:
        raise DomainError("Boson and fermion meeting probabilities need a factorized start")


def _initial_walkers(spec: TwoWalkerSpec) -> tuple[WalkerState, WalkerState]:
    _require_factorized(spec)
    first = init_localized(0, spec.init1)
    if spec.separation == 0 and spec.init1 == spec.init2:
        return first, first
    return first, init_localized(spec.separation, spec.init2)


def meeting_total_indist(stat: ExchangeClass, spec: TwoWalkerSpec, t: int, coin: Optional[CoinOperator] = None) -> float:
    return float(meeting_series_indist(stat, spec, t, coin).values[t])


def meeting_series_indist(stat: ExchangeClass, spec: TwoWalkerSpec, steps: int, coin: Optional[CoinOperator] = None) -> MeetingSeries:
    """
    Sum over sites of the boson or fermion meeting probability for t = 0..steps.

    `values` are the raw diagonal sums, up to 2 for bosons with overlapping
    coin states. The overall curve uses them divided by the pair norm
    1 +- |<phi1|phi2>|^2, which the walk conserves.
    """
    first, second = _initial_walkers(spec)
    norm = symmetrized_norm(stat, first, second)
    identical = first is second
    values = np.zeros(steps + 1)
    values[0] = np.sum(meeting_profile_indist(stat, first, second)[1])
    firsts = trajectory(first, steps, coin)
    seconds = firsts if identical else trajectory(second, steps, coin)
    for k in range(1, steps + 1):
        a = next(firsts)
        b = a if identical else next(seconds)
        values[k] = np.sum(meeting_profile_indist(stat, a, b)[1])
    logger.debug(f"[MeetingSeries] {stat.value} d={spec.half_separation} steps={steps} identical={identical}")
    normalized = values / norm if norm > AMPLITUDE_TOLERANCE else np.zeros_like(values)
    return MeetingSeries(values, overall_curve(normalized))


def symmetrized_norm(stat: ExchangeClass, first: WalkerState, second: WalkerState) -> float:
    """
    Total probability of the (anti)symmetrized pair state.

    (1/2) sum_{a,b} |phi1_a phi2_b +- phi1_b phi2_a|^2 = 1 +- |<phi1|phi2>|^2,
    halved for two bosons in the same state.
    """
    inner = abs(overlap(first, second)) ** 2
    if stat is ExchangeClass.FERMION:
        return 1.0 - inner
    norm = 1.0 + inner
    return 0.5 * norm if same_state(first, second) else norm


def diagonal_meeting_from_joint(stat: ExchangeClass, joint: JointState, m: int) -> float:
    """Boson or fermion diagonal probability read from general joint amplitudes psi_ij(m, m)."""
    amps = joint.at(m, m)
    return float(_diagonal_values(stat, amps[0, 0], amps[0, 1], amps[1, 0], amps[1, 1]))
