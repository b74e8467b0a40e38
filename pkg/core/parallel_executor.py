"""Parallel maps over pure graph computations, preserving input order.

Threads share the GIL, so execute_parallel and map_parallel cap concurrency
rather than add speed; map_processes is the CPU-bound path.
"""
import concurrent.futures
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

from .config import config

T = TypeVar("T")
R = TypeVar("R")


def execute_parallel(
    funcs: List[Callable[[], T]],
    max_workers: Optional[int] = None,
) -> List[Tuple[Optional[T], Optional[BaseException]]]:
    """Execute zero-argument callables in parallel; return (result, error) pairs in input order."""
    workers = max(1, min(max_workers or config.worker_count(), len(funcs) or 1))
    results: List[Tuple[Optional[T], Optional[BaseException]]] = [(None, None)] * len(funcs)
    if workers == 1:
        for idx, func in enumerate(funcs):
            try:
                results[idx] = (func(), None)
            except Exception as e:
                results[idx] = (None, e)
        return results
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(funcs[idx]): idx for idx in range(len(funcs))}
        for future in concurrent.futures.as_completed(futures):
            idx = futures[future]
            try:
                results[idx] = (future.result(), None)
            except Exception as e:
                results[idx] = (None, e)
    return results


def map_parallel(func: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """Apply func to every item in parallel; re-raise the first error in input order."""
    items = list(items)
    outcomes = execute_parallel([lambda item=item: func(item) for item in items], max_workers)
    out: List[R] = []
    for result, error in outcomes:
        if error is not None:
            raise error
        out.append(result)
    return out


def map_processes(func: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """Process-pool map for CPU-bound work; func and items must pickle. Results in input order."""
    items = list(items)
    workers = max(1, min(max_workers or config.worker_count(), len(items) or 1))
    if workers == 1:
        return [func(item) for item in items]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items, chunksize=max(1, len(items) // (workers * 4))))
