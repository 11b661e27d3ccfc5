"""Order-preserving parallel map used by the scans."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence


def available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover - non-Linux
        return os.cpu_count() or 1


def pmap(func: Callable, items: Sequence, workers: int | None = 1, chunksize: int | None = None) -> list:
    """``[func(x) for x in items]`` spread over ``workers`` processes.

    Results keep the input order, so output never depends on the worker count.
    ``workers=None`` uses all available CPUs.
    """
    items = list(items)
    if workers is None:
        workers = available_workers()
    if workers < 1:
        raise ValueError("workers must be positive")
    if workers == 1 or len(items) < 2:
        return [func(x) for x in items]
    if chunksize is None:
        chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(func, items, chunksize=chunksize))


def starcall(args: tuple):
    func, rest = args[0], args[1:]
    return func(*rest)


def pstarmap(func: Callable, arglists: Iterable[tuple], workers: int | None = 1) -> list:
    return pmap(starcall, [(func,) + tuple(a) for a in arglists], workers)
