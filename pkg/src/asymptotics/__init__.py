from src.asymptotics.envelopes import EstimateKind, slow_envelope
from src.asymptotics.elliptic import (
    EllipticEstimate,
    EllipticParams,
    complete_first_kind,
    complete_third_kind,
    elliptic_params,
    meeting_closed_form,
    meeting_elliptic,
    meeting_quadrature,
    peak_value,
    printed_closed_form,
)
from src.asymptotics.estimates import (
    k_asymptotic,
    k_exact,
    leading_order,
    overall_estimate_curve,
    overall_estimate_quantum,
    overall_exponent,
)
from src.asymptotics.fits import (
    FitResult,
    fit_leading_order,
    fit_linear,
    fit_log_square,
    fit_power_law,
    moving_average,
)

__all__ = [
    "EstimateKind",
    "slow_envelope",
    "EllipticEstimate",
    "EllipticParams",
    "complete_first_kind",
    "complete_third_kind",
    "elliptic_params",
    "meeting_closed_form",
    "meeting_elliptic",
    "meeting_quadrature",
    "peak_value",
    "printed_closed_form",
    "k_asymptotic",
    "k_exact",
    "leading_order",
    "overall_estimate_curve",
    "overall_estimate_quantum",
    "overall_exponent",
    "FitResult",
    "fit_leading_order",
    "fit_linear",
    "fit_log_square",
    "fit_power_law",
    "moving_average",
]
