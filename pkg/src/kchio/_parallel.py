from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

from .scalar import OpCounter, counter_merge

T = TypeVar("T")
R = TypeVar("R")


def _chunks(items: Sequence[T], parts: int) -> list[Sequence[T]]:
    size, extra = divmod(len(items), parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        out.append(items[start:stop])
        start = stop
    return out


def run_partitioned(items: Sequence[T], work: Callable[[T, OpCounter], R], workers: int,
                    counter: OpCounter) -> list[R]:
    """Apply ``work`` to each item, results in input order.

    Items are split into contiguous chunks, one per worker, each with a private
    counter; counters are merged into ``counter`` at the end. The result does not
    depend on ``workers``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    items = list(items)
    if workers == 1 or len(items) <= 1:
        local = OpCounter()
        out = [work(it, local) for it in items]
        counter.absorb(local)
        return out

    def job(chunk):
        local = OpCounter()
        return [work(it, local) for it in chunk], local

    chunks = _chunks(items, min(workers, len(items)))
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        results = list(pool.map(job, chunks))
    counter.absorb(counter_merge(c for _, c in results))
    return [r for part, _ in results for r in part]
