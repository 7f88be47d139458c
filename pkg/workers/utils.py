"""
Utility functions for workers.

Shared utilities for timing, logging, and value formatting.
"""
import time
import logging
from functools import wraps
from typing import Callable, TypeVar, Any, Optional

logger = logging.getLogger(__name__)

T = TypeVar('T')


def timed(label: Optional[str] = None) -> Callable:
    """
    Decorator logging the wall-clock time of each call.

    Args:
        label: Name used in the log line (defaults to the function name)

    Example:
        @timed("Sweep")
        def run_sweep(config):
            ...
    """
    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            started = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed = time.perf_counter() - started
                logger.info(f"[{label or func.__name__}] finished in {elapsed:.3f}s")
        return wrapper
    return decorator


def format_cell(value: Any) -> str:
    """
    Format one table cell for CSV output.

    Floats use repr (shortest round-trip form), missing values are empty.

    Args:
        value: Cell value (int, float, or None)

    Returns:
        Text of the cell
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)
