from src.meeting.series import MeetingSeries, overall_curve, overall_meeting
from src.meeting.distinguishable import (
    FACTORIZED_LABELS,
    BellState,
    Decomposition,
    DecompositionTerm,
    JointDistribution,
    JointState,
    TwoWalkerSpec,
    basis_probabilities,
    decompose,
    joint_amplitudes,
    joint_distribution,
    joint_evolve_oracle,
    meeting_at,
    meeting_grid,
    meeting_profile,
    meeting_series,
    meeting_series_mq,
    meeting_total,
    reduced_distributions,
)
from src.meeting.indistinguishable import (
    ExchangeClass,
    diagonal_meeting_from_joint,
    meeting_at_indist,
    meeting_profile_indist,
    meeting_series_indist,
    meeting_total_indist,
    symmetrized_norm,
)

__all__ = [
    "FACTORIZED_LABELS",
    "BellState",
    "Decomposition",
    "DecompositionTerm",
    "ExchangeClass",
    "JointDistribution",
    "JointState",
    "MeetingSeries",
    "TwoWalkerSpec",
    "basis_probabilities",
    "decompose",
    "diagonal_meeting_from_joint",
    "joint_amplitudes",
    "joint_distribution",
    "joint_evolve_oracle",
    "meeting_at",
    "meeting_at_indist",
    "meeting_grid",
    "meeting_profile",
    "meeting_profile_indist",
    "meeting_series",
    "meeting_series_indist",
    "meeting_series_mq",
    "meeting_total",
    "meeting_total_indist",
    "overall_curve",
    "overall_meeting",
    "reduced_distributions",
    "symmetrized_norm",
]
