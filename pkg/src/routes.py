from fastapi import APIRouter
import logging
import os

from src.asymptotics import k_asymptotic, k_exact, meeting_elliptic, meeting_quadrature
from src.classical import cl_meet_total, cl_meet_total_gauss, cl_meet_total_long_time, cl_overall
from src.constant import VERSION
from src.errors import ResourceLimitError
from src.experiments import meeting_series_table, nan_to_none
from src.qwalk_model import (
    ClassicalRequest,
    ClassicalResponse,
    EllipticRecord,
    EstimateRequest,
    EstimateResponse,
    HealthModel,
    MeetingSeriesRequest,
    MeetingSeriesResponse,
    WalkDistributionRequest,
    WalkDistributionResponse,
)
from src.walk import Spinor, evolve, init_localized, mean_position, position_distribution, stddev

logger = logging.getLogger(__name__)

API_MAX_STEPS = int(os.getenv("API_MAX_STEPS", "2000"))

router = APIRouter()


def check_steps(steps: int) -> None:
    if steps > API_MAX_STEPS:
        raise ResourceLimitError(f"Requested {steps} steps, the API accepts at most {API_MAX_STEPS}")


@router.get("/health", response_model=HealthModel)
def health():
    return {"status": True, "version": VERSION}


@router.post("/walk/distribution", response_model=WalkDistributionResponse)
def walk_distribution(req: WalkDistributionRequest):
    check_steps(req.steps)
    state = evolve(init_localized(req.origin, Spinor.from_label(req.coin)), req.steps)
    dist = position_distribution(state)
    return {
        "time": req.steps,
        "positions": dist.positions.tolist(),
        "probabilities": dist.probs.tolist(),
        "mean": mean_position(dist),
        "stddev": stddev(dist),
    }


@router.post("/meeting/series", response_model=MeetingSeriesResponse)
def meeting_series(req: MeetingSeriesRequest):
    check_steps(req.steps)
    table = meeting_series_table(req.kind, req.d, req.steps, start=req.start)
    logger.info(f"[API] meeting series kind={req.kind} d={req.d} steps={req.steps}")
    return {
        "kind": req.kind,
        "d": req.d,
        "t": table.column("t"),
        "meeting": table.column("meeting"),
        "overall": table.column("overall"),
        "estimate": table.column("estimate"),
        "metadata": table.metadata,
    }


@router.post("/meeting/estimate", response_model=EstimateResponse)
def meeting_estimate(req: EstimateRequest):
    estimate = meeting_elliptic(req.kind, req.t, req.d)
    elliptic = EllipticRecord(
        value=estimate.value,
        printed_value=estimate.printed_value,
        printed_agrees=estimate.printed_agrees,
        principal_value=estimate.principal_value,
        pole=estimate.pole,
        parameter=estimate.params.parameter,
        characteristics=[nan_to_none(n) for n in estimate.params.characteristics()],
    )
    return {
        "kind": req.kind,
        "t": req.t,
        "d": req.d,
        "quadrature": meeting_quadrature(req.kind, req.t, req.d),
        "elliptic": elliptic,
        "k_exact": k_exact(req.t, req.d),
        "k_asymptotic": k_asymptotic(req.t, req.d),
    }


@router.post("/classical/meeting", response_model=ClassicalResponse)
def classical_meeting(req: ClassicalRequest):
    check_steps(req.t)
    return {
        "t": req.t,
        "d": req.d,
        "exact": cl_meet_total(req.t, req.d),
        "gaussian": cl_meet_total_gauss(req.t, req.d) if req.t > 0 else None,
        "long_time": cl_meet_total_long_time(req.t, req.d) if req.t > 0 else None,
        "overall": cl_overall(req.t, req.d),
    }
