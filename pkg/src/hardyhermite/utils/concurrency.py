# src/hardyhermite/utils/concurrency.py
from __future__ import annotations

import asyncio
import os
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: int | None) -> int:
    """0 or None means every available core."""
    if not jobs:
        return os.cpu_count() or 1
    if jobs < 0:
        raise ValueError(f"jobs must be non-negative, got {jobs}")
    return jobs


async def _gather_ordered(fn: Callable[[T], R], items: list[T], jobs: int) -> list[R]:
    semaphore = asyncio.Semaphore(jobs)

    async def sem_task(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    return await asyncio.gather(*(sem_task(item) for item in items))


def map_ordered(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = 1) -> list[R]:
    """
    fn over items with at most `jobs` calls in flight.

    Results come back in input order whatever the degree of parallelism, so
    reductions over them are deterministic.
    """
    items = list(items)
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    return list(asyncio.run(_gather_ordered(fn, items, jobs)))
