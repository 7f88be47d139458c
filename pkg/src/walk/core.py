"""
Single-walker coined quantum walk on the integer line.

A walker state at time t is stored as a (2, 2t + 1) complex block covering
sites [origin - t, origin + t]; row 0 holds the L component and row 1 the R
component. Block index j corresponds to site m = origin - t + j, so the parity
constraint reduces to "odd j is zero".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional
import logging
import math

import numpy as np
from numpy.typing import NDArray

from src.constant import AMPLITUDE_TOLERANCE, PROBABILITY_TOLERANCE
from src.errors import DomainError, NormalizationError

logger = logging.getLogger(__name__)

ComplexArray = NDArray[np.complex128]


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """2x2 unitary acting on the coin space {L, R}."""
    entries: ComplexArray

    def __post_init__(self):
        matrix = np.asarray(self.entries, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise DomainError(f"Coin must be a 2x2 matrix, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise DomainError("Coin entries must be finite")
        deviation = np.max(np.abs(matrix.conj().T @ matrix - np.eye(2)))
        if deviation > AMPLITUDE_TOLERANCE:
            raise NormalizationError(f"Coin is not unitary (max |C^dagger C - I| = {deviation:.3e})")
        matrix.setflags(write=False)
        object.__setattr__(self, "entries", matrix)

    def apply(self, spinor: "Spinor") -> "Spinor":
        left, right = self.entries @ spinor.as_array()
        return Spinor(complex(left), complex(right))

    def __matmul__(self, other: "CoinOperator") -> "CoinOperator":
        return CoinOperator(self.entries @ other.entries)


@dataclass(frozen=True)
class Spinor:
    """Coin amplitudes (amp_l, amp_r) at one lattice site."""
    amp_l: complex
    amp_r: complex

    def __post_init__(self):
        if not (np.isfinite(self.amp_l) and np.isfinite(self.amp_r)):
            raise DomainError("Spinor components must be finite")

    @classmethod
    def from_label(cls, label: str) -> "Spinor":
        """L, R or S (the unbiased (|L> + i|R>)/sqrt(2) coin)."""
        try:
            return _SPINOR_LABELS[label.upper()]
        except KeyError:
            raise DomainError(f"Unknown coin label '{label}' (expected L, R or S)") from None

    def norm_squared(self) -> float:
        return abs(self.amp_l) ** 2 + abs(self.amp_r) ** 2

    def as_array(self) -> ComplexArray:
        return np.array([self.amp_l, self.amp_r], dtype=np.complex128)


LEFT = Spinor(1.0 + 0j, 0j)
RIGHT = Spinor(0j, 1.0 + 0j)
SYMMETRIC = Spinor(1 / math.sqrt(2) + 0j, 1j / math.sqrt(2))

_SPINOR_LABELS = {"L": LEFT, "R": RIGHT, "S": SYMMETRIC}


@dataclass(frozen=True, eq=False)
class WalkerState:
    origin: int
    time: int
    amplitudes: ComplexArray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.time < 0:
            raise DomainError(f"Walker time must be non-negative, got {self.time}")
        if amps.shape != (2, 2 * self.time + 1):
            raise DomainError(
                f"Amplitude block for t={self.time} must have shape (2, {2 * self.time + 1}), got {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def lowest(self) -> int:
        return self.origin - self.time

    @property
    def highest(self) -> int:
        return self.origin + self.time

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(self.lowest, self.highest + 1)

    def spinor(self, m: int) -> Spinor:
        if m < self.lowest or m > self.highest:
            return Spinor(0j, 0j)
        left, right = self.amplitudes[:, m - self.lowest]
        return Spinor(complex(left), complex(right))

    def window(self, lo: int, hi: int) -> ComplexArray:
        """Amplitudes over sites lo..hi inclusive, zero-padded outside the light cone."""
        out = np.zeros((2, max(hi - lo + 1, 0)), dtype=np.complex128)
        start, stop = max(lo, self.lowest), min(hi, self.highest)
        if start <= stop:
            out[:, start - lo:stop - lo + 1] = self.amplitudes[:, start - self.lowest:stop - self.lowest + 1]
        return out

    def probabilities(self) -> NDArray[np.float64]:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def shifted(self, offset: int) -> "WalkerState":
        return WalkerState(self.origin + offset, self.time, self.amplitudes)

    def validate(self, tolerance: float = AMPLITUDE_TOLERANCE) -> "WalkerState":
        if not np.all(np.isfinite(self.amplitudes)):
            raise DomainError("Walker amplitudes contain NaN or Inf")
        if np.any(self.amplitudes[:, 1::2] != 0):
            raise DomainError(f"Parity violated: amplitude on a site of the wrong parity at t={self.time}")
        norm = self.norm_squared()
        if abs(norm - 1.0) > tolerance:
            raise NormalizationError(f"Walker state is not normalized (|psi|^2 = {norm!r})")
        return self


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    positions: NDArray[np.int64]
    probs: NDArray[np.float64]
    time: int

    def __getitem__(self, m: int) -> float:
        index = m - int(self.positions[0])
        if 0 <= index < len(self.probs):
            return float(self.probs[index])
        return 0.0

    def as_dict(self, include_zeros: bool = False) -> dict[int, float]:
        return {
            int(m): float(p)
            for m, p in zip(self.positions, self.probs)
            if include_zeros or p != 0.0
        }

    def total(self) -> float:
        return float(np.sum(self.probs))

    def validate(self, tolerance: float = PROBABILITY_TOLERANCE) -> "PositionDistribution":
        if np.any(self.probs < -tolerance) or np.any(self.probs > 1.0 + tolerance):
            raise DomainError("Position probabilities must lie in [0, 1]")
        if abs(self.total() - 1.0) > tolerance:
            raise NormalizationError(f"Position distribution sums to {self.total()!r}")
        return self


def hadamard() -> CoinOperator:
    return CoinOperator(np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0))


def init_localized(origin: int, coin: Spinor) -> WalkerState:
    """Walker localized at `origin` with coin state `coin`, time 0."""
    norm = coin.norm_squared()
    if abs(norm - 1.0) > AMPLITUDE_TOLERANCE:
        raise NormalizationError(f"Initial coin state is not normalized (|c|^2 = {norm!r})")
    return WalkerState(origin, 0, coin.as_array().reshape(2, 1))


def advance(
    amplitudes: ComplexArray,
    coin: CoinOperator,
    coin_axis: int = 0,
    position_axis: int = 1,
) -> ComplexArray:
    """
    One application of U = S (I x C) along a (coin, position) axis pair.

    The coined L component moves one site left and the coined R component one
    site right, so the position axis grows by two. Every other axis is carried
    along untouched, which lets the two-walker oracle reuse this kernel.
    """
    amps = np.moveaxis(amplitudes, (coin_axis, position_axis), (0, 1))
    coined = np.tensordot(coin.entries, amps, axes=(1, 0))
    size = coined.shape[1]
    out = np.zeros((2, size + 2) + coined.shape[2:], dtype=np.complex128)
    out[0, :size] = coined[0]
    out[1, 2:] = coined[1]
    return np.moveaxis(out, (0, 1), (coin_axis, position_axis))


def step(state: WalkerState, coin: Optional[CoinOperator] = None) -> WalkerState:
    coin = coin or HADAMARD
    return WalkerState(state.origin, state.time + 1, advance(state.amplitudes, coin))


def trajectory(state: WalkerState, steps: int, coin: Optional[CoinOperator] = None) -> Iterator[WalkerState]:
    """Yield the state after each of `steps` single steps."""
    if steps < 0:
        raise DomainError(f"Number of steps must be non-negative, got {steps}")
    coin = coin or HADAMARD
    for _ in range(steps):
        state = step(state, coin)
        yield state


def evolve(state: WalkerState, steps: int, coin: Optional[CoinOperator] = None) -> WalkerState:
    for state in trajectory(state, steps, coin):
        pass
    return state


def position_distribution(state: WalkerState) -> PositionDistribution:
    return PositionDistribution(state.positions, state.probabilities(), state.time)


def mean_position(dist: PositionDistribution) -> float:
    return float(np.dot(dist.positions, dist.probs))


def stddev(dist: PositionDistribution) -> float:
    mean = mean_position(dist)
    variance = float(np.dot((dist.positions - mean) ** 2, dist.probs))
    return math.sqrt(max(variance, 0.0))


def overlap(a: WalkerState, b: WalkerState) -> complex:
    """Inner product <a|b> of two walker states at equal times."""
    if a.time != b.time:
        raise DomainError(f"Cannot take the overlap of states at t={a.time} and t={b.time}")
    lo, hi = max(a.lowest, b.lowest), min(a.highest, b.highest)
    if lo > hi:
        return 0j
    return complex(np.vdot(a.window(lo, hi), b.window(lo, hi)))


HADAMARD = hadamard()
