"""
Signal handling for graceful shutdown.
"""
import signal
import logging

logger = logging.getLogger(__name__)

# Global shutdown flag
shutdown = False


def get_shutdown_flag() -> bool:
    """
    Get current shutdown status.

    Returns:
        True if shutdown requested, False otherwise
    """
    return shutdown


def reset_shutdown_flag() -> None:
    global shutdown
    shutdown = False


def signal_handler(sig, frame):
    """Handle shutdown signals gracefully."""
    global shutdown
    logger.info("Shutdown signal received, finishing current sweep chunk...")
    shutdown = True


def register_signal_handlers() -> dict:
    """
    Register signal handlers for graceful shutdown.

    Returns:
        The handlers they replace, keyed by signal number
    """
    previous = {}
    for sig in (signal.SIGINT, signal.SIGTERM):
        previous[sig] = signal.getsignal(sig)
        signal.signal(sig, signal_handler)
    return previous


def restore_signal_handlers(previous: dict) -> None:
    for sig, handler in previous.items():
        signal.signal(sig, handler)
