from src.walk.core import (
    HADAMARD,
    LEFT,
    RIGHT,
    SYMMETRIC,
    CoinOperator,
    PositionDistribution,
    Spinor,
    WalkerState,
    advance,
    evolve,
    hadamard,
    init_localized,
    mean_position,
    overlap,
    position_distribution,
    stddev,
    step,
    trajectory,
)

__all__ = [
    "HADAMARD",
    "LEFT",
    "RIGHT",
    "SYMMETRIC",
    "CoinOperator",
    "PositionDistribution",
    "Spinor",
    "WalkerState",
    "advance",
    "evolve",
    "hadamard",
    "init_localized",
    "mean_position",
    "overlap",
    "position_distribution",
    "stddev",
    "step",
    "trajectory",
]
