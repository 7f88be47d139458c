from fastapi import Request
from fastapi.responses import JSONResponse
import logging

logger = logging.getLogger(__name__)


class QuantumWalkError(Exception):
    """Base class for every error raised by the library."""
    pass


class NormalizationError(QuantumWalkError):
    """A coin spinor or state is not normalized within tolerance."""
    pass


class DomainError(QuantumWalkError):
    """An argument lies outside the domain of the requested quantity."""
    pass


class ResourceLimitError(QuantumWalkError):
    """A request exceeds a configured computational cap."""
    pass


class UsageError(QuantumWalkError):
    """Inconsistent run configuration (e.g. a kind the command does not support)."""
    pass


class OutputError(QuantumWalkError):
    """A result file could not be written."""
    pass


class OracleMismatchError(QuantumWalkError):
    """The tensor oracle disagrees with the amplitude-product path."""
    pass


# Mapping library errors to HTTP status codes
QWALK_ERROR_STATUS_MAP = {
    "NormalizationError": 422,
    "DomainError": 422,
    "ResourceLimitError": 413,
    "UsageError": 400,
    "OracleMismatchError": 500,
    "OutputError": 500,
}


async def quantum_walk_exception_handler(request: Request, exc: QuantumWalkError):
    error_type = exc.__class__.__name__
    error_message = str(exc)
    status_code = QWALK_ERROR_STATUS_MAP.get(error_type, 400)

    logger.warning(f"[QWALK ERROR] {error_type}: {error_message} @ {request.url}")

    return JSONResponse(
        status_code=status_code,
        content={
            "error": error_type,
            "message": error_message,
            "status": status_code,
        },
    )


async def generic_exception_handler(request: Request, exc: Exception):
    logger.error(f"[Unhandled Exception] {type(exc).__name__}: {str(exc)}", exc_info=True)

    return JSONResponse(
        status_code=500,
        content={
            "error": "InternalServerError",
            "message": "An unexpected error occurred while evaluating the walk.",
        },
    )
