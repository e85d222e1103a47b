"""
Worker-count resolution and ordered parallel mapping.

Parameter sweeps and grid searches fan out over independent parameters.
Results are always assembled in input order, so parallel and serial runs
produce the same reports.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def cpu_count() -> int:
    """
    Get the number of logical CPUs.

    Returns:
        Logical CPU count (at least 1)
    """
    try:
        import psutil
        count = psutil.cpu_count(logical=True)
    except ImportError:
        logger.warning("psutil not installed - assuming a single CPU")
        return 1
    except Exception as e:
        logger.error("Failed to query CPU count: %s", e)
        return 1
    return max(1, int(count or 1))


def resolve_workers(threads: Optional[int] = None, serial: bool = False) -> int:
    """
    Decide how many worker processes a run uses.

    Args:
        threads: Requested worker count, or None for all logical CPUs
        serial: Force in-process execution

    Returns:
        Worker count; 1 means no process pool
    """
    if serial:
        return 1
    if threads is None:
        return cpu_count()
    return max(1, int(threads))


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Apply fn to every item, returning results in input order.

    fn and the items must be picklable when workers > 1.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    workers = min(workers, len(items))
    logger.debug("Dispatching %d tasks to %d workers", len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
