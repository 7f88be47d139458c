"""
Ordered worker pool for sweep points.

Results come back in submission order whatever the number of processes, so
output files do not depend on the pool size.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, Optional, TypeVar
import logging

from workers.config import MAX_SWEEP_WORKERS
from workers.signals import get_shutdown_flag

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def _checked(results: Iterable[R]) -> Iterator[R]:
    for result in results:
        if get_shutdown_flag():
            raise InterruptedError("Shutdown requested during sweep")
        yield result


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> list[R]:
    """
    Apply `fn` to every item, in parallel when workers > 1.

    Args:
        fn: Picklable callable (module-level function or functools.partial)
        items: Job arguments
        workers: Process count (defaults to MAX_SWEEP_WORKERS)

    Returns:
        Results in the order of `items`
    """
    jobs = list(items)
    count = min(workers or MAX_SWEEP_WORKERS, max(len(jobs), 1))
    logger.debug(f"[Pool] {len(jobs)} jobs on {count} worker(s)")
    if count == 1:
        return list(_checked(map(fn, jobs)))
    with ProcessPoolExecutor(max_workers=count) as pool:
        return list(_checked(pool.map(fn, jobs)))
