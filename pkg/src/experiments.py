"""
Experiment recipes shared by the CLI and the HTTP API.

Each recipe returns a `Table` (column names, rows, metadata); writing it out
is left to the caller.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Iterable, Optional, Sequence
import logging
import math

import numpy as np

from src.asymptotics import EstimateKind, meeting_closed_form, slow_envelope
from src.classical import cl_meet_total, cl_meet_total_gauss, cl_monte_carlo, cl_overall_grid
from src.constant import OVERALL_WIDTH_LEVEL, ORACLE_TOLERANCE, SQRT2, SWEEP_CHUNK_SIZE, TOOL_NAME, VERSION
from src.errors import OracleMismatchError, UsageError
from src.meeting import (
    FACTORIZED_LABELS,
    BellState,
    ExchangeClass,
    MeetingSeries,
    TwoWalkerSpec,
    decompose,
    diagonal_meeting_from_joint,
    joint_amplitudes,
    joint_evolve_oracle,
    meeting_grid,
    meeting_series,
    meeting_series_indist,
    meeting_series_mq,
    overall_curve,
)
from src.meeting.distinguishable import ORACLE_MAX_STEPS
from src.walk import Spinor, evolve, init_localized

logger = logging.getLogger(__name__)

SINGLE_WALK_KINDS = ("L", "R", "S")
DISTINGUISHABLE_KINDS = tuple(FACTORIZED_LABELS) + tuple(b.value for b in BellState)
EXCHANGE_KINDS = tuple(s.value for s in ExchangeClass)
SERIES_KINDS = DISTINGUISHABLE_KINDS + EXCHANGE_KINDS + ("classical",)
SWEEP_KINDS = tuple(k.value for k in EstimateKind)

MONTE_CARLO_TRIALS = 100_000

Cell = Optional[float]


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Cell]]
    metadata: dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> list[Cell]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


def _metadata(command: str, **extra: Any) -> dict[str, Any]:
    return {"tool": TOOL_NAME, "version": VERSION, "command": command, **extra}


def _check_kind(kind: str, allowed: Sequence[str], command: str) -> None:
    if kind not in allowed:
        raise UsageError(f"Kind '{kind}' is not valid for {command} (expected one of {', '.join(allowed)})")


def single_walk_table(steps: int, coin: str = "S", origin: int = 0) -> Table:
    """Columns m, P, envelope for one walker after `steps` steps; envelope is empty outside |m| < t/sqrt(2)."""
    _check_kind(coin, SINGLE_WALK_KINDS, "single-walk")
    state = evolve(init_localized(origin, Spinor.from_label(coin)), steps)
    probs = state.probabilities()
    rows: list[list[Cell]] = []
    for m, p in zip(state.positions, probs):
        x = int(m) - origin
        envelope = slow_envelope(x, steps, coin) if steps > 0 and abs(x) < steps / SQRT2 else None
        rows.append([int(m), float(p), envelope])
    logger.info(f"[SingleWalk] coin={coin} t={steps} total={float(np.sum(probs)):.15f}")
    return Table(["m", "P", "envelope"], rows, _metadata("single-walk", kind=coin, steps=steps, origin=origin))


def _estimate(kind: str, t: int, d: int) -> Cell:
    if kind == "classical":
        return cl_meet_total_gauss(t, d) if t > 0 else None
    if kind in SWEEP_KINDS and d >= 1 and t >= SQRT2 * d:
        return meeting_closed_form(kind, t, d)
    return None


def _oracle_check_distinguishable(spec: TwoWalkerSpec, t: int, series: MeetingSeries) -> float:
    oracle = joint_evolve_oracle(spec, t)
    actual = joint_amplitudes(decompose(spec), t).amplitudes
    amplitude_gap = float(np.max(np.abs(oracle.amplitudes - actual)))
    sites = range(max(-t, spec.separation - t), min(t, spec.separation + t) + 1)
    meeting = sum(float(np.sum(np.abs(oracle.at(m, m)) ** 2)) for m in sites)
    return max(amplitude_gap, abs(meeting - series.at(t)))


def _oracle_check_exchange(stat: ExchangeClass, spec: TwoWalkerSpec, t: int, series: MeetingSeries) -> float:
    joint = joint_evolve_oracle(spec, t)
    sites = range(max(-t, spec.separation - t), min(t, spec.separation + t) + 1)
    total = sum(diagonal_meeting_from_joint(stat, joint, m) for m in sites)
    if stat is ExchangeClass.BOSON and spec.separation == 0 and spec.init1 == spec.init2:
        total *= 0.5
    return abs(total - series.at(t))


def _series_for(kind: str, d: int, steps: int, start: str) -> tuple[MeetingSeries, Optional[TwoWalkerSpec]]:
    if kind == "classical":
        values = np.array([cl_meet_total(t, d) for t in range(steps + 1)])
        return MeetingSeries(values, overall_curve(values)), None
    if kind in EXCHANGE_KINDS:
        _check_kind(start, tuple(FACTORIZED_LABELS), f"{kind} starts")
        spec = TwoWalkerSpec.from_label(start, d)
        return meeting_series_indist(ExchangeClass(kind), spec, steps), spec
    spec = TwoWalkerSpec.from_label(kind, d)
    if kind in FACTORIZED_LABELS:
        return meeting_series_mq(kind, d, steps), spec
    return meeting_series(decompose(spec), steps), spec


def meeting_series_table(
    kind: str,
    d: int,
    steps: int,
    start: str = "RL",
    oracle: bool = False,
    seed: Optional[int] = None,
) -> Table:
    """
    Columns t, meeting, overall, estimate for t = 1..steps.

    With `oracle` set, the final step (capped at ORACLE_MAX_STEPS) is
    recomputed on the full joint state and any deviation above
    ORACLE_TOLERANCE raises OracleMismatchError. A `seed` adds a Monte-Carlo
    check of the last classical value to the metadata.
    """
    _check_kind(kind, SERIES_KINDS, "meeting-series")
    series, spec = _series_for(kind, d, steps, start)
    rows: list[list[Cell]] = [
        [t, series.at(t), series.overall_at(t), _estimate(kind, t, d)]
        for t in range(1, steps + 1)
    ]
    peak_t, peak_value = series.peak()
    metadata = _metadata(
        "meeting-series", kind=kind, d=d, steps=steps, peak_t=peak_t, peak_value=peak_value,
    )
    if kind in EXCHANGE_KINDS:
        metadata["start"] = start

    if oracle and spec is not None:
        t_check = min(steps, ORACLE_MAX_STEPS)
        if kind in EXCHANGE_KINDS:
            deviation = _oracle_check_exchange(ExchangeClass(kind), spec, t_check, series)
        else:
            deviation = _oracle_check_distinguishable(spec, t_check, series)
        logger.info(f"[Oracle] kind={kind} d={d} t={t_check} max deviation {deviation:.3e}")
        if deviation > ORACLE_TOLERANCE:
            raise OracleMismatchError(
                f"Joint-state oracle deviates by {deviation:.3e} at t={t_check} for kind={kind}, d={d}"
            )
        metadata["oracle"] = {"t": t_check, "max_deviation": deviation}

    if seed is not None and kind == "classical" and steps > 0:
        metadata["monte_carlo"] = {
            "t": steps,
            "trials": MONTE_CARLO_TRIALS,
            "seed": seed,
            "estimate": cl_monte_carlo(steps, d, MONTE_CARLO_TRIALS, seed),
        }

    logger.info(f"[MeetingSeries] kind={kind} d={d} steps={steps} peak at t={peak_t} ({peak_value:.6g})")
    return Table(["t", "meeting", "overall", "estimate"], rows, metadata)


def width_grid(steps: int) -> list[int]:
    """{T/4, T/2, 3T/4, T} with integer division, zero entries dropped."""
    return sorted({value for value in (steps // 4, steps // 2, 3 * steps // 4, steps) if value > 0})


def sweep_chunks(steps: int, size: int = SWEEP_CHUNK_SIZE) -> list[tuple[int, int]]:
    """Half-open d-ranges [lo, hi) covering d = 0..steps."""
    return [(lo, min(lo + size, steps + 1)) for lo in range(0, steps + 1, size)]


def sweep_chunk(kind: str, steps: int, grid: Sequence[int], bounds: tuple[int, int]) -> list[tuple[list[float], list[float]]]:
    """
    Quantum and classical overall probabilities at every T in `grid` for d in [lo, hi).

    One pair of basis walks feeds `meeting_grid` for the whole range; the
    classical side reads the same columns of `cl_overall_grid`.
    """
    lo, hi = bounds
    quantum = meeting_grid(kind, steps, hi - 1)[:, lo:]
    classical = cl_overall_grid(steps, hi - 1)[:, lo:]
    points = []
    for meeting, overall_classical in zip(quantum.T, classical.T):
        overall_quantum = overall_curve(meeting)
        points.append((
            [float(overall_quantum[T - 1]) for T in grid],
            [float(overall_classical[T - 1]) for T in grid],
        ))
    return points


def _width(column: Iterable[float]) -> Optional[int]:
    reached = [d for d, value in enumerate(column) if value >= OVERALL_WIDTH_LEVEL]
    return max(reached) if reached else None


def overall_sweep_tables(
    kind: str,
    steps: int,
    map_fn: Callable[..., Iterable] = map,
) -> tuple[Table, Table]:
    """
    Overall meeting probability against separation, and the width table.

    The sweep table has one row per even separation 2d, d = 0..steps. The
    width table lists, for each T in `width_grid(steps)`, the largest d with
    overall(T, d) >= OVERALL_WIDTH_LEVEL. `map_fn` must preserve order.
    """
    _check_kind(kind, SWEEP_KINDS, "overall-sweep")
    grid = width_grid(steps)
    if not grid:
        raise UsageError(f"Overall sweep needs at least one step, got {steps}")
    chunks = map_fn(partial(sweep_chunk, kind, steps, grid), sweep_chunks(steps))
    points = [point for chunk in chunks for point in chunk]

    rows = [[d, 2 * d, quantum[-1], classical[-1]] for d, (quantum, classical) in enumerate(points)]
    metadata = _metadata("overall-sweep", kind=kind, steps=steps)
    sweep = Table(["d", "separation", "quantum", "classical"], rows, metadata)

    width_rows: list[list[Cell]] = []
    for i, T in enumerate(grid):
        width_rows.append([T, _width(q[i] for q, _ in points), _width(c[i] for _, c in points)])
    width = Table(
        ["T", "quantum_width", "classical_width"],
        width_rows,
        _metadata("overall-sweep", kind=kind, steps=steps, width_definition=f"max d with overall(T, d) >= {OVERALL_WIDTH_LEVEL}"),
    )
    logger.info(f"[Sweep] kind={kind} T={steps}: {len(rows)} separations, widths {[r[1] for r in width_rows]}")
    return sweep, width


def nan_to_none(value: Cell) -> Cell:
    return None if value is None or (isinstance(value, float) and math.isnan(value)) else value
