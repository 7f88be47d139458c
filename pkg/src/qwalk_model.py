# pylint: disable=too-few-public-methods
"""Module containing the run configuration and the HTTP request/response models."""
from __future__ import annotations

from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field
from pydantic import model_validator

from src.experiments import SERIES_KINDS, SINGLE_WALK_KINDS, SWEEP_KINDS

# -------------------- Run configuration -----------------------

Command = Literal["single-walk", "meeting-series", "overall-sweep"]

DEFAULT_KIND = {
    "single-walk": "S",
    "meeting-series": "RL",
    "overall-sweep": "S",
}

ALLOWED_KINDS = {
    "single-walk": SINGLE_WALK_KINDS,
    "meeting-series": SERIES_KINDS,
    "overall-sweep": SWEEP_KINDS,
}


class RunConfig(BaseModel):
    """One experiment run as given on the command line."""
    command: Command
    kind: Optional[str] = None
    d: int = Field(0, ge=0)
    steps: int = Field(100, ge=1)
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    seed: Optional[int] = Field(None, ge=0, lt=2 ** 64)
    oracle: bool = False
    quiet: bool = False
    start: str = "RL"
    workers: Optional[int] = Field(None, ge=1)

    @model_validator(mode='after')
    def check_kind(self):
        """
        Fills in the command's default kind and rejects kinds the command does not run.
        """
        if self.kind is None:
            self.kind = DEFAULT_KIND[self.command]
        allowed = ALLOWED_KINDS[self.command]
        if self.kind not in allowed:
            raise ValueError(
                f"kind '{self.kind}' is not valid for {self.command} (expected one of {', '.join(allowed)})"
            )
        if self.kind in ("boson", "fermion") and self.start not in ("RL", "S", "LR", "LL", "RR"):
            raise ValueError(f"start '{self.start}' must be a factorized coin pair")
        return self

    def metadata(self) -> dict[str, Any]:
        return self.model_dump(exclude={"output", "quiet", "workers"})


# -------------------- HTTP models -----------------------

class HealthModel(BaseModel):
    status: bool
    version: str


class WalkDistributionRequest(BaseModel):
    steps: int = Field(..., ge=0)
    coin: Literal["L", "R", "S"] = "S"
    origin: int = 0


class WalkDistributionResponse(BaseModel):
    time: int
    positions: List[int]
    probabilities: List[float]
    mean: float
    stddev: float


class MeetingSeriesRequest(BaseModel):
    kind: Literal[
        "RL", "S", "LR", "LL", "RR", "psi+", "psi-", "phi+", "phi-", "boson", "fermion", "classical",
    ] = "RL"
    d: int = Field(..., ge=0)
    steps: int = Field(..., ge=1)
    start: Literal["RL", "S", "LR", "LL", "RR"] = "RL"


class MeetingSeriesResponse(BaseModel):
    kind: str
    d: int
    t: List[int]
    meeting: List[float]
    overall: List[float]
    estimate: List[Optional[float]]
    metadata: dict[str, Any]


class EstimateRequest(BaseModel):
    kind: Literal["RL", "S", "LR"] = "S"
    t: float = Field(..., gt=0)
    d: int = Field(..., ge=1)


class EllipticRecord(BaseModel):
    value: float
    printed_value: Optional[float] = None
    printed_agrees: bool
    principal_value: bool
    pole: bool
    parameter: float
    characteristics: List[Optional[float]]


class EstimateResponse(BaseModel):
    kind: str
    t: float
    d: int
    quadrature: float
    elliptic: EllipticRecord
    k_exact: float
    k_asymptotic: float


class ClassicalRequest(BaseModel):
    t: int = Field(..., ge=0)
    d: int = Field(..., ge=0)


class ClassicalResponse(BaseModel):
    t: int
    d: int
    exact: float
    gaussian: Optional[float] = None
    long_time: Optional[float] = None
    overall: float
