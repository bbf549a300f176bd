# =============================================================================
# utilities/parallel.py
# =============================================================================
# Purpose:
# Order-preserving map over independent work items, either in-process or on a
# multiprocessing pool. Results always come back in input order, so callers
# get the same answer for every worker count.
# =============================================================================

import logging
import multiprocessing as mp
from contextlib import contextmanager
from typing import Callable, Iterator, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Below this many items a pool costs more than it saves
MIN_PARALLEL_ITEMS = 8


class OrderedMapper:
    """Callable that maps a picklable function over items and keeps input order."""

    def __init__(self, pool=None):
        self._pool = pool

    def __call__(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self._pool is None or len(items) < MIN_PARALLEL_ITEMS:
            return [fn(item) for item in items]
        return self._pool.map(fn, items)


@contextmanager
def worker_pool(parallel: int) -> Iterator[OrderedMapper]:
    """
    Yield an OrderedMapper backed by `parallel` worker processes.

    parallel <= 1 gives an in-process mapper and never starts a pool.
    """
    if parallel <= 1:
        yield OrderedMapper()
        return

    logger.info(f"Starting worker pool with {parallel} processes")
    with mp.Pool(parallel) as pool:
        yield OrderedMapper(pool)
