"""
Chunk worker pool for the scan kernel.

Work is split into a fixed list of chunks before any thread starts, and results are
returned in chunk order, so whatever reduction the caller applies afterwards sees the
same sequence for every worker count.
"""

import os
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar, Union

from debug_logging import log_debug, log_error

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Union[int, str, None]) -> int:
    """'auto' (or None) becomes the CPU count; integers must be >= 1."""
    if workers is None or workers == "auto":
        return max(1, os.cpu_count() or 1)
    workers = int(workers)
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def run_chunks(task_func: Callable[[T], R], chunks: Iterable[T], workers: Union[int, str] = 1) -> List[R]:
    """
    Apply task_func to every chunk and return the results in input order.

    Args:
        task_func: Pure function of one chunk. Must not mutate shared state.
        chunks: Work items; materialized before dispatch.
        workers: Thread count or 'auto'. 1 runs inline without a pool.

    Returns:
        List of results, result[i] belonging to chunks[i].
    """
    chunks = list(chunks)
    n_workers = min(resolve_workers(workers), max(1, len(chunks)))
    name = getattr(task_func, "__name__", "task")
    log_debug("WORKER", f"Running {len(chunks)} chunk(s) of {name} on {n_workers} worker(s)")

    if n_workers == 1:
        return [task_func(chunk) for chunk in chunks]

    try:
        with ThreadPoolExecutor(max_workers=n_workers, thread_name_prefix="scan") as pool:
            # map() yields in submission order regardless of completion order
            return list(pool.map(task_func, chunks))
    except Exception as e:
        log_error("WORKER", f"Error during '{name}': {e}\n{traceback.format_exc()}")
        raise
