"""
Order-preserving fan-out over a process pool
"""

import logging
import multiprocessing
from typing import Callable, Iterable, List, Optional, TypeVar

from hyptet.config.settings import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Optional[int]) -> int:
    return get_settings().workers if workers is None else max(0, int(workers))


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """``[func(x) for x in items]``, spread over ``workers`` processes when positive.

    ``func`` must be a module-level function. Results come back in input order,
    so anything summed from them does not depend on the worker count.
    """
    items = list(items)
    workers = resolve_workers(workers)
    if workers == 0 or len(items) < 2:
        return [func(x) for x in items]
    processes = min(workers, len(items))
    logger.debug(f"mapping {func.__name__} over {len(items)} items with {processes} processes")
    with multiprocessing.Pool(processes=processes) as pool:
        return pool.map(func, items)


__all__ = ["resolve_workers", "ordered_map"]
