"""
Closed-form and quadrature estimates of the meeting probability.

With u = x/t, delta = d/t and the centred variable v = u - delta, the overlap
integrals of two slow envelopes reduce to

    M(t, d) = 2/(pi^2 t) * int_{-alpha}^{alpha} dv / (R(v) * 2 sqrt(alpha^2 - v^2) sqrt(beta^2 - v^2))

where alpha = 1/sqrt(2) - delta, beta = 1/sqrt(2) + delta and R is

    RL: (1 - delta)^2 - v^2
    LR: (1 + delta)^2 - v^2
    S:  ((1 - delta)^2 - v^2) ((1 + delta)^2 - v^2)

Each piece is a complete elliptic integral of the third kind with parameter
(alpha/beta)^2 and characteristic below one, evaluated through Carlson's
symmetric integrals. The expression in terms of F+-, a, b+-, c+- is evaluated
as well and compared against the reduced form.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
import logging
import math

from scipy.integrate import quad
from scipy.special import elliprf, elliprj

from src.asymptotics.envelopes import EstimateKind
from src.constant import (
    PRINTED_FORMULA_TOLERANCE,
    QUAD_ABS_TOLERANCE,
    QUAD_LIMIT,
    QUAD_REL_TOLERANCE,
    SQRT2,
)
from src.errors import DomainError

logger = logging.getLogger(__name__)

PEAK_TOLERANCE = 1e-12  # relative slack on t >= sqrt(2) d
POLE_TOLERANCE = 1e-12


def complete_first_kind(m: float) -> float:
    """K(m) for parameter m < 1."""
    return float(elliprf(0.0, 1.0 - m, 1.0))


def complete_third_kind(n: float, m: float) -> float:
    """Pi(n | m) for parameter m < 1; n > 1 gives the Cauchy principal value."""
    return float(elliprf(0.0, 1.0 - m, 1.0) + n / 3.0 * elliprj(0.0, 1.0 - m, 1.0, 1.0 - n))


def _check_kind(kind) -> EstimateKind:
    try:
        return EstimateKind(kind)
    except ValueError:
        raise DomainError(f"No closed-form estimate for initial state '{kind}'") from None


def _reduced(t: float, d: int) -> tuple[float, float, float]:
    if d < 1:
        raise DomainError(f"Closed-form estimates need d >= 1, got d={d}")
    if t < SQRT2 * d * (1.0 - PEAK_TOLERANCE):
        raise DomainError(f"Envelopes do not overlap before t = sqrt(2) d = {SQRT2 * d:.6g}, got t={t}")
    delta = d / t
    alpha = max(1.0 / SQRT2 - delta, 0.0)
    beta = 1.0 / SQRT2 + delta
    return delta, alpha, beta


def _pi_term(p: float, alpha: float, beta: float) -> float:
    """int_0^alpha dv / ((p^2 - v^2) sqrt(alpha^2 - v^2) sqrt(beta^2 - v^2))."""
    return complete_third_kind((alpha / p) ** 2, (alpha / beta) ** 2) / (beta * p * p)


def meeting_closed_form(kind, t: float, d: int) -> float:
    kind = _check_kind(kind)
    delta, alpha, beta = _reduced(t, d)
    scale = 2.0 / (math.pi ** 2 * t)
    if kind is EstimateKind.RL:
        return scale * _pi_term(1.0 - delta, alpha, beta)
    if kind is EstimateKind.LR:
        return scale * _pi_term(1.0 + delta, alpha, beta)
    return scale * (_pi_term(1.0 - delta, alpha, beta) - _pi_term(1.0 + delta, alpha, beta)) / (4.0 * delta)


def meeting_quadrature(kind, t: float, d: int) -> float:
    """Adaptive quadrature of the envelope overlap integral after v = alpha sin(theta)."""
    kind = _check_kind(kind)
    delta, alpha, beta = _reduced(t, d)

    def integrand(theta: float) -> float:
        v = alpha * math.sin(theta)
        u = v + delta
        if kind is EstimateKind.RL:
            rational = (1.0 - u) * (1.0 + u - 2.0 * delta)
        elif kind is EstimateKind.LR:
            rational = (1.0 + u) * (1.0 - u + 2.0 * delta)
        else:
            rational = (1.0 - u * u) * (1.0 - (u - 2.0 * delta) ** 2)
        return 1.0 / (rational * 2.0 * math.sqrt(beta * beta - v * v))

    value, error = quad(
        integrand, -math.pi / 2, math.pi / 2,
        epsabs=QUAD_ABS_TOLERANCE, epsrel=QUAD_REL_TOLERANCE, limit=QUAD_LIMIT,
    )
    logger.debug(f"[Quadrature] kind={kind.value} t={t} d={d} integral={value!r} error={error:.2e}")
    return 2.0 / (math.pi ** 2 * t) * value


def peak_value(kind, d: int) -> float:
    """Meeting estimate at t = sqrt(2) d, where the two envelope peaks overlap."""
    kind = _check_kind(kind)
    if d < 1:
        raise DomainError(f"Peak values need d >= 1, got d={d}")
    if kind is EstimateKind.RL:
        return (2 - 3 * SQRT2) / (math.pi * d * (18 - 13 * SQRT2))
    if kind is EstimateKind.LR:
        return (2 + 3 * SQRT2) / (math.pi * d * (18 + 13 * SQRT2))
    return 2 / (math.pi * d)


@dataclass(frozen=True)
class EllipticParams:
    f_plus: float
    f_minus: float
    modulus_a: complex
    b_plus: float
    b_minus: float
    c_plus: float
    c_minus: float

    @property
    def parameter(self) -> float:
        """m = a^2, non-positive for t >= sqrt(2) d."""
        return (self.modulus_a ** 2).real

    def characteristics(self) -> tuple[float, float, float, float]:
        return self.b_plus, self.b_minus, self.c_plus, self.c_minus


def elliptic_params(t: float, d: int) -> EllipticParams:
    _reduced(t, d)
    gap = max(t - SQRT2 * d, 0.0)
    with_nan = float("nan")

    def safe(numerator: float, denominator: float) -> float:
        return numerator / denominator if denominator != 0 else with_nan

    f_plus = safe(2 * t, math.pi ** 2 * d * (t - d) * (t * (2 + SQRT2) - 4 * d) * (t * (2 - SQRT2) - 4 * d))
    f_minus = safe(2 * t, math.pi ** 2 * d * (t + d) * (t * (2 + SQRT2) + 4 * d) * (t * (2 - SQRT2) + 4 * d))
    modulus_a = 1j * math.sqrt(max(t * t / (2 * d * d) - 1.0, 0.0))
    b_plus = (1 + SQRT2) * gap / (d * (SQRT2 - 2))
    b_minus = (1 - SQRT2) * gap / (d * (SQRT2 + 2))
    c_plus = safe((t * (SQRT2 - 2) + 4 * d) * gap, SQRT2 * d * (t * (SQRT2 + 2) - 4 * d))
    c_minus = safe((t * (SQRT2 + 2) + 4 * d) * gap, SQRT2 * d * (t * (SQRT2 - 2) - 4 * d))
    return EllipticParams(f_plus, f_minus, modulus_a, b_plus, b_minus, c_plus, c_minus)


def printed_closed_form(kind, t: float, d: int, params: Optional[EllipticParams] = None) -> float:
    """The F+-, a, b+-, c+- expression term by term; NaN at poles."""
    kind = _check_kind(kind)
    p = params or elliptic_params(t, d)
    m = p.parameter
    if any(abs(1.0 - n) < POLE_TOLERANCE for n in p.characteristics()):
        return float("nan")
    big, small = (4 + 2 * SQRT2) * d, (4 - 2 * SQRT2) * d
    k = complete_first_kind(m)
    pi_bp, pi_bm = complete_third_kind(p.b_plus, m), complete_third_kind(p.b_minus, m)
    pi_cp, pi_cm = complete_third_kind(p.c_plus, m), complete_third_kind(p.c_minus, m)

    if kind is EstimateKind.RL:
        return p.f_plus * (
            2 * (t - d) * (t - small) * k
            + SQRT2 * ((t - big) * (t - small) * pi_bp - t * t * pi_cp)
        )
    if kind is EstimateKind.LR:
        return p.f_minus * (
            2 * (t + d) * (t + big) * k
            - SQRT2 * ((t + big) * (t + small) * pi_bm - t * t * pi_cm)
        )
    return math.pi ** 2 * p.f_plus * p.f_minus / 4 * (
        16 * d * (t * t - d * d) * (t + big) * (t - small) * k
        + SQRT2 * (t + big) * (t - big) * (t + small) * (t - small) * ((t + d) * pi_bp + (t - d) * pi_bm)
        - SQRT2 * t * t * (
            (t + d) * (t + big) * (t + small) * pi_cp
            + (t - d) * (t - big) * (t - small) * pi_cm
        )
    )


@dataclass(frozen=True)
class EllipticEstimate:
    kind: EstimateKind
    t: float
    d: int
    value: float
    printed_value: Optional[float]
    printed_agrees: bool
    principal_value: bool
    pole: bool
    params: EllipticParams


def meeting_elliptic(kind, t: float, d: int) -> EllipticEstimate:
    """
    Closed-form meeting estimate with the term-by-term expression alongside.

    `value` is the reduced form, which the quadrature reproduces; the
    term-by-term expression is reported in `printed_value` and flagged when it
    deviates.
    """
    kind = _check_kind(kind)
    value = meeting_closed_form(kind, t, d)
    params = elliptic_params(t, d)
    characteristics = params.characteristics()
    pole = any(abs(1.0 - n) < POLE_TOLERANCE for n in characteristics)
    principal = any(n > 1.0 + POLE_TOLERANCE for n in characteristics)
    printed = printed_closed_form(kind, t, d, params)
    agrees = math.isfinite(printed) and abs(printed - value) <= PRINTED_FORMULA_TOLERANCE * abs(value)
    if not agrees:
        logger.warning(
            f"[Elliptic] term-by-term form for {kind.value} gives {printed!r} against {value!r} "
            f"at t={t}, d={d} (pole={pole}, principal value={principal})"
        )
    return EllipticEstimate(
        kind=kind,
        t=t,
        d=d,
        value=value,
        printed_value=printed if math.isfinite(printed) else None,
        printed_agrees=agrees,
        principal_value=principal,
        pole=pole,
        params=params,
    )
