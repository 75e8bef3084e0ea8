"""Order-independent worker pool for replication loops.

Work items are keyed by index and results collected into index order,
so the output is identical for any thread count.  Each item must be a
pure function of its index (seeds pre-assigned per index).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

R = TypeVar("R")


def indexed_map(fn: Callable[[int], R], count: int, threads: int = 1) -> list[R]:
    if threads <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(count)))
