"""
Two distinguishable walkers: joint distributions and meeting probabilities.

Walker 1 starts at site 0 and walker 2 at site 2d (plus an optional parity
offset that makes the separation odd). Every production path goes through
single-walker amplitudes; `joint_evolve_oracle` evolves the full
four-component joint state and exists for cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional
import logging
import math
import os

import numpy as np
from dotenv import load_dotenv
from numpy.typing import NDArray
from scipy import signal

from src.constant import AMPLITUDE_TOLERANCE, PROBABILITY_TOLERANCE
from src.errors import DomainError, NormalizationError, ResourceLimitError
from src.meeting.series import MeetingSeries, overall_curve
from src.walk import (
    HADAMARD,
    LEFT,
    RIGHT,
    CoinOperator,
    PositionDistribution,
    Spinor,
    WalkerState,
    advance,
    init_localized,
    overlap,
    trajectory,
)

load_dotenv(override=True)

logger = logging.getLogger(__name__)

ORACLE_MAX_STEPS = int(os.getenv("ORACLE_MAX_STEPS", "200"))  # tensor oracle is O(t^3)

FACTORIZED_LABELS = {
    "RL": ("R", "L"),
    "LR": ("L", "R"),
    "S": ("S", "S"),
    "LL": ("L", "L"),
    "RR": ("R", "R"),
}


class BellState(str, Enum):
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"

    @property
    def sign(self) -> int:
        return 1 if self.value.endswith("+") else -1

    def coin_pairs(self) -> tuple[tuple[Spinor, Spinor], tuple[Spinor, Spinor]]:
        """The two product coin states combined with weights 1/sqrt(2) and sign/sqrt(2)."""
        if self in (BellState.PSI_PLUS, BellState.PSI_MINUS):
            return (LEFT, RIGHT), (RIGHT, LEFT)
        return (LEFT, LEFT), (RIGHT, RIGHT)


@dataclass(frozen=True)
class TwoWalkerSpec:
    half_separation: int
    init1: Optional[Spinor] = None
    init2: Optional[Spinor] = None
    bell: Optional[BellState] = None
    parity_offset: int = 0

    def __post_init__(self):
        if self.half_separation < 0:
            raise DomainError(f"Half-separation must be non-negative, got {self.half_separation}")
        if self.parity_offset not in (0, 1):
            raise DomainError(f"Parity offset must be 0 or 1, got {self.parity_offset}")
        if self.bell is None:
            if self.init1 is None or self.init2 is None:
                raise DomainError("A factorized start needs both coin spinors")
            for spinor in (self.init1, self.init2):
                if abs(spinor.norm_squared() - 1.0) > AMPLITUDE_TOLERANCE:
                    raise NormalizationError(f"Coin spinor {spinor} is not normalized")
        elif self.init1 is not None or self.init2 is not None:
            raise DomainError("A Bell start does not take individual coin spinors")

    @classmethod
    def factorized(cls, half_separation: int, init1: Spinor, init2: Spinor, parity_offset: int = 0) -> "TwoWalkerSpec":
        return cls(half_separation, init1=init1, init2=init2, parity_offset=parity_offset)

    @classmethod
    def entangled(cls, half_separation: int, bell: BellState, parity_offset: int = 0) -> "TwoWalkerSpec":
        return cls(half_separation, bell=bell, parity_offset=parity_offset)

    @classmethod
    def from_label(cls, label: str, half_separation: int) -> "TwoWalkerSpec":
        """RL, LR, S, LL, RR or one of the Bell labels psi+, psi-, phi+, phi-."""
        if label in FACTORIZED_LABELS:
            first, second = FACTORIZED_LABELS[label]
            return cls.factorized(half_separation, Spinor.from_label(first), Spinor.from_label(second))
        try:
            return cls.entangled(half_separation, BellState(label))
        except ValueError:
            raise DomainError(f"Unknown initial state '{label}'") from None

    @property
    def separation(self) -> int:
        return 2 * self.half_separation + self.parity_offset

    @property
    def is_entangled(self) -> bool:
        return self.bell is not None

    def initial_coin_matrix(self) -> NDArray[np.complex128]:
        """Joint coin amplitudes c[i, j] of the initial state, i for walker 1 and j for walker 2."""
        if self.bell is None:
            return np.outer(self.init1.as_array(), self.init2.as_array())
        (a1, a2), (b1, b2) = self.bell.coin_pairs()
        return (np.outer(a1.as_array(), a2.as_array())
                + self.bell.sign * np.outer(b1.as_array(), b2.as_array())) / math.sqrt(2.0)


@dataclass(frozen=True)
class DecompositionTerm:
    weight: complex
    walker1: WalkerState
    walker2: WalkerState


@dataclass(frozen=True)
class Decomposition:
    terms: tuple[DecompositionTerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise DomainError("A decomposition needs at least one term")
        times = {term.walker1.time for term in self.terms} | {term.walker2.time for term in self.terms}
        if len(times) != 1:
            raise DomainError(f"All decomposition walkers must share one time, got {sorted(times)}")
        norm = self.norm_squared()
        if abs(norm - 1.0) > PROBABILITY_TOLERANCE:
            raise NormalizationError(f"Decomposition is not normalized (<psi|psi> = {norm!r})")

    @property
    def time(self) -> int:
        return self.terms[0].walker1.time

    def norm_squared(self) -> float:
        total = 0j
        for a in self.terms:
            for b in self.terms:
                total += (np.conj(a.weight) * b.weight
                          * overlap(a.walker1, b.walker1) * overlap(a.walker2, b.walker2))
        return float(total.real)


@dataclass(frozen=True, eq=False)
class JointState:
    """psi_ij(m, n) stored as a (2, 2, 2t + 1, 2t + 1) block; walker 1 on axes (0, 2), walker 2 on (1, 3)."""
    time: int
    origin1: int
    origin2: int
    amplitudes: NDArray[np.complex128]

    @property
    def positions1(self) -> NDArray[np.int64]:
        return np.arange(self.origin1 - self.time, self.origin1 + self.time + 1)

    @property
    def positions2(self) -> NDArray[np.int64]:
        return np.arange(self.origin2 - self.time, self.origin2 + self.time + 1)

    def at(self, m: int, n: int) -> NDArray[np.complex128]:
        i, j = m - (self.origin1 - self.time), n - (self.origin2 - self.time)
        size = 2 * self.time + 1
        if 0 <= i < size and 0 <= j < size:
            return self.amplitudes[:, :, i, j]
        return np.zeros((2, 2), dtype=np.complex128)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def distribution(self) -> "JointDistribution":
        probs = np.sum(np.abs(self.amplitudes) ** 2, axis=(0, 1))
        return JointDistribution(self.time, self.origin1, self.origin2, probs)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """P(m, n) on the block [origin1 - t, origin1 + t] x [origin2 - t, origin2 + t]."""
    time: int
    origin1: int
    origin2: int
    probs: NDArray[np.float64]

    def at(self, m: int, n: int) -> float:
        i, j = m - (self.origin1 - self.time), n - (self.origin2 - self.time)
        size = 2 * self.time + 1
        if 0 <= i < size and 0 <= j < size:
            return float(self.probs[i, j])
        return 0.0

    def total(self) -> float:
        return float(np.sum(self.probs))

    def marginals(self) -> tuple[PositionDistribution, PositionDistribution]:
        t = self.time
        first = PositionDistribution(np.arange(self.origin1 - t, self.origin1 + t + 1), self.probs.sum(axis=1), t)
        second = PositionDistribution(np.arange(self.origin2 - t, self.origin2 + t + 1), self.probs.sum(axis=0), t)
        return first, second


def decompose(spec: TwoWalkerSpec) -> Decomposition:
    """Write the initial state as sum_alpha w_alpha |walker1_alpha> x |walker2_alpha>."""
    second_origin = spec.separation
    if spec.bell is None:
        terms = (DecompositionTerm(1.0 + 0j, init_localized(0, spec.init1), init_localized(second_origin, spec.init2)),)
    else:
        (a1, a2), (b1, b2) = spec.bell.coin_pairs()
        weight = 1 / math.sqrt(2.0)
        terms = (
            DecompositionTerm(weight + 0j, init_localized(0, a1), init_localized(second_origin, a2)),
            DecompositionTerm(spec.bell.sign * weight + 0j, init_localized(0, b1), init_localized(second_origin, b2)),
        )
    return Decomposition(terms)


def evolve_decomposition(dec: Decomposition, steps: int, coin: Optional[CoinOperator] = None) -> Iterator[Decomposition]:
    """Yield the decomposition after each step; every term walker advances once per step."""
    walkers = [(term.walker1, term.walker2) for term in dec.terms]
    streams = [(trajectory(w1, steps, coin), trajectory(w2, steps, coin)) for w1, w2 in walkers]
    for _ in range(steps):
        yield Decomposition(tuple(
            DecompositionTerm(term.weight, next(s1), next(s2))
            for term, (s1, s2) in zip(dec.terms, streams)
        ))


def decomposition_at(dec: Decomposition, t: int, coin: Optional[CoinOperator] = None) -> Decomposition:
    if t < dec.time:
        raise DomainError(f"Cannot evolve a decomposition at t={dec.time} back to t={t}")
    current = dec
    for current in evolve_decomposition(dec, t - dec.time, coin):
        pass
    return current


def joint_amplitudes(dec: Decomposition, t: int, coin: Optional[CoinOperator] = None) -> JointState:
    """psi_ij(m, n, t) = sum_alpha w_alpha psi1_alpha,i(m, t) psi2_alpha,j(n, t)."""
    evolved = decomposition_at(dec, t, coin)
    origins = {(term.walker1.origin, term.walker2.origin) for term in evolved.terms}
    if len(origins) != 1:
        raise DomainError("Joint amplitudes need every term to share the walker origins")
    weights = np.array([term.weight for term in evolved.terms], dtype=np.complex128)
    first = np.stack([term.walker1.amplitudes for term in evolved.terms])
    second = np.stack([term.walker2.amplitudes for term in evolved.terms])
    amps = np.einsum("a,aim,ajn->ijmn", weights, first, second)
    head = evolved.terms[0]
    return JointState(t, head.walker1.origin, head.walker2.origin, amps)


def joint_distribution(dec: Decomposition, t: int, coin: Optional[CoinOperator] = None) -> JointDistribution:
    return joint_amplitudes(dec, t, coin).distribution()


def joint_evolve_oracle(
    spec: TwoWalkerSpec,
    steps: int,
    coin: Optional[CoinOperator] = None,
    max_steps: Optional[int] = None,
) -> JointState:
    """Evolve the four-component joint state directly under U x U."""
    if steps < 0:
        raise DomainError(f"Number of steps must be non-negative, got {steps}")
    limit = ORACLE_MAX_STEPS if max_steps is None else max_steps
    if steps > limit:
        raise ResourceLimitError(f"Tensor oracle limited to {limit} steps, requested {steps}")
    coin = coin or HADAMARD
    amps = spec.initial_coin_matrix().reshape(2, 2, 1, 1)
    for _ in range(steps):
        amps = advance(amps, coin, coin_axis=0, position_axis=2)
        amps = advance(amps, coin, coin_axis=1, position_axis=3)
    logger.debug(f"[Oracle] evolved joint state to t={steps} (d={spec.half_separation})")
    return JointState(steps, 0, spec.separation, amps)


def _diagonal_amplitudes(dec: Decomposition) -> tuple[int, NDArray[np.complex128]]:
    """Lowest common site and psi_ij(m, m) over the overlap of the two light cones."""
    lo = max(min(term.walker1.lowest for term in dec.terms), min(term.walker2.lowest for term in dec.terms))
    hi = min(max(term.walker1.highest for term in dec.terms), max(term.walker2.highest for term in dec.terms))
    if lo > hi:
        return lo, np.zeros((2, 2, 0), dtype=np.complex128)
    weights = np.array([term.weight for term in dec.terms], dtype=np.complex128)
    first = np.stack([term.walker1.window(lo, hi) for term in dec.terms])
    second = np.stack([term.walker2.window(lo, hi) for term in dec.terms])
    return lo, np.einsum("a,aim,ajm->ijm", weights, first, second)


def _profile_of(dec: Decomposition) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    lo, diag = _diagonal_amplitudes(dec)
    probs = np.sum(np.abs(diag) ** 2, axis=(0, 1))
    return np.arange(lo, lo + probs.shape[0]), probs


def meeting_profile(dec: Decomposition, t: int, coin: Optional[CoinOperator] = None) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    """M_D(m, t) for every site m both walkers can reach."""
    return _profile_of(decomposition_at(dec, t, coin))


def meeting_at(dec: Decomposition, m: int, t: int, coin: Optional[CoinOperator] = None) -> float:
    positions, probs = meeting_profile(dec, t, coin)
    if positions.size == 0 or m < positions[0] or m > positions[-1]:
        return 0.0
    return float(probs[m - positions[0]])


def meeting_total(dec: Decomposition, t: int, coin: Optional[CoinOperator] = None) -> float:
    return float(np.sum(meeting_profile(dec, t, coin)[1]))


def reduced_distributions(dec: Decomposition, t: int, coin: Optional[CoinOperator] = None) -> tuple[PositionDistribution, PositionDistribution]:
    """Marginal position distributions of walker 1 and walker 2."""
    return joint_distribution(dec, t, coin).marginals()


def meeting_series(dec: Decomposition, steps: int, coin: Optional[CoinOperator] = None) -> MeetingSeries:
    """M(t) for t = 0..steps together with the running overall probability."""
    values = np.empty(steps + 1)
    values[0] = np.sum(_profile_of(dec)[1])
    for k, current in enumerate(evolve_decomposition(dec, steps, coin), start=1):
        values[k] = np.sum(_profile_of(current)[1])
    return MeetingSeries(values, overall_curve(values))


def basis_probabilities(steps: int, coin: Optional[CoinOperator] = None) -> Iterator[tuple[int, NDArray[np.float64], NDArray[np.float64]]]:
    """Yield (t, P^L, P^R) for walkers started at 0; index i of each array is site i - t."""
    left, right = init_localized(0, LEFT), init_localized(0, RIGHT)
    yield 0, left.probabilities(), right.probabilities()
    for left, right in zip(trajectory(left, steps, coin), trajectory(right, steps, coin)):
        yield left.time, left.probabilities(), right.probabilities()


def _pair_for(kind: str, p_left: NDArray[np.float64], p_right: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if kind not in FACTORIZED_LABELS:
        raise DomainError(f"Sum formulas need a factorized L/R start, got '{kind}'")
    by_label = {"L": p_left, "R": p_right, "S": 0.5 * (p_left + p_right)}
    first, second = FACTORIZED_LABELS[kind]
    return by_label[first], by_label[second]


def meeting_series_mq(kind: str, half_separation: int, steps: int, coin: Optional[CoinOperator] = None) -> MeetingSeries:
    """
    Meeting series of a factorized start built from P^L and P^R alone.

    M(t, d) = sum_m P1(m, t) P2(m - 2d, t); the S start uses (P^L + P^R)/2 for
    both walkers.
    """
    if half_separation < 0:
        raise DomainError(f"Half-separation must be non-negative, got {half_separation}")
    shift = 2 * half_separation
    values = np.zeros(steps + 1)
    for t, p_left, p_right in basis_probabilities(steps, coin):
        first, second = _pair_for(kind, p_left, p_right)
        if shift < first.shape[0]:
            values[t] = np.dot(first[shift:], second[:first.shape[0] - shift])
    return MeetingSeries(values, overall_curve(values))


def meeting_grid(kind: str, steps: int, max_half_separation: int, coin: Optional[CoinOperator] = None) -> NDArray[np.float64]:
    """M(t, d) for t = 0..steps and d = 0..max_half_separation from one pair of basis walks."""
    grid = np.zeros((steps + 1, max_half_separation + 1))
    for t, p_left, p_right in basis_probabilities(steps, coin):
        first, second = _pair_for(kind, p_left, p_right)
        lags = signal.correlate(first, second, mode="full")
        reach = min(t, max_half_separation)
        # lag 2d sits at index 2t + 2d of the full correlation
        grid[t, :reach + 1] = lags[2 * t:2 * t + 2 * reach + 1:2]
    logger.debug(f"[MeetingGrid] kind={kind} steps={steps} d_max={max_half_separation}")
    return grid
