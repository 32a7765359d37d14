"""
Ordered fan-out of independent tasks
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from .config import Config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """Apply func to every item, returning results in item order.

    workers=0 means Config.worker_count(); workers=1 runs in-process.
    """
    if workers == 0:
        workers = Config.worker_count()
    workers = min(workers, len(items))
    if workers <= 1:
        return [func(item) for item in items]

    try:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(func, items))
    except (OSError, NotImplementedError) as e:
        logger.warning("worker pool unavailable (%s), running %d tasks serially", e, len(items))
        return [func(item) for item in items]
