"""Small shared helpers: environment overrides and optional parallelism."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

ENV_PREFIX = "PROXILIFT_"

T = TypeVar("T")
U = TypeVar("U")


def env_override(name: str, default: str | None = None) -> str | None:
    """Value of ``PROXILIFT_<NAME>`` if set, else ``default``."""
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def thread_count() -> int:
    """Worker count from ``PROXILIFT_THREADS``; defaults to 1 (sequential)."""
    raw = env_override("THREADS")
    if raw is None:
        return 1
    try:
        parsed = int(raw)
    except ValueError:
        return 1
    return max(1, parsed)


def parallel_map(fn: Callable[[T], U], items: Sequence[T] | Iterable[T]) -> list[U]:
    """Map ``fn`` over ``items``, using threads when PROXILIFT_THREADS > 1.

    Results keep input order.  With one worker this is a plain list(map(...)),
    avoiding pool overhead in the common exact-arithmetic paths.
    """
    items = list(items)
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
