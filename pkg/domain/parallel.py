from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")

CHUNKS_PER_WORKER = 4


def index_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def map_ranges(task: Callable[..., T], total: int, workers: int, *args: Any) -> list[T]:
    """Run task(*args, start, stop) over disjoint slices of [0, total), results in slice order.

    task and args must be picklable when workers > 1.
    """
    if workers <= 1:
        return [task(*args, 0, total)]
    ranges = index_ranges(total, workers * CHUNKS_PER_WORKER)
    logger.debug("Splitting %d items into %d slices over %d workers", total, len(ranges), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task, *args, start, stop) for start, stop in ranges]
        return [future.result() for future in futures]
