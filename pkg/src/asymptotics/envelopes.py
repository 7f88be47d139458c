from __future__ import annotations

from enum import Enum
import math

from src.constant import SQRT2
from src.errors import DomainError


class EstimateKind(str, Enum):
    """Factorized starts with closed-form estimates: walker 1 coin, walker 2 coin."""
    RL = "RL"
    S = "S"
    LR = "LR"


def slow_envelope(x: float, t: float, coin: str) -> float:
    """
    Non-oscillating part of the single-walker distribution inside |x| < t/sqrt(2).

    The value is a density per occupied site (sites of one parity), so it
    integrates to two over the real line.
    """
    if t <= 0:
        raise DomainError(f"Envelope needs t > 0, got t={t}")
    if abs(x) >= t / SQRT2:
        raise DomainError(f"|x|={abs(x)} outside the envelope support |x| < t/sqrt(2) = {t / SQRT2:.6g}")
    u = x / t
    root = math.sqrt(1.0 - 2.0 * u * u)
    label = coin.upper()
    if label == "L":
        return 2.0 / (math.pi * t * (1.0 + u) * root)
    if label == "R":
        return 2.0 / (math.pi * t * (1.0 - u) * root)
    if label == "S":
        return 2.0 / (math.pi * t * (1.0 - u * u) * root)
    raise DomainError(f"Unknown coin label '{coin}' (expected L, R or S)")
