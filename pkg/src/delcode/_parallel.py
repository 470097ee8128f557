"""Deterministic fan-out over worker processes.

Work is always split into the same chunks regardless of the worker count and
results come back in chunk order, so aggregated totals are bit-identical for
any ``workers`` value.
"""

from __future__ import annotations

import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    env = os.environ.get("DELCODE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def map_chunks(func: Callable[[T], R], chunks: Sequence[T], workers: int | None = 1) -> list[R]:
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(chunks) <= 1:
        return [func(c) for c in chunks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(workers, len(chunks)), mp_context=ctx) as pool:
        return list(pool.map(func, chunks))


def elapsed_ms(started: float) -> int:
    return int((time.perf_counter() - started) * 1000)
