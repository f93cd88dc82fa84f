"""Deterministic ordered map over independent work items.

Parallelism is opt-in via the ``EPSRS_THREADS`` environment variable
(default 1). Results are written into preallocated slots by index, so the
output never depends on scheduling order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_workers() -> int:
    try:
        n = int(os.environ.get("EPSRS_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def thread_map(fn, items) -> list:
    items = list(items)
    workers = min(thread_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    out = [None] * len(items)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(fn, x): i for i, x in enumerate(items)}
        for fut, i in futures.items():
            out[i] = fut.result()
    return out
