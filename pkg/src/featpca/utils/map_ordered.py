from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable


def map_ordered[T, R](fn: Callable[[T], R], items: Iterable[T], n_jobs: int = 1) -> list[R]:
    """Apply `fn` to every item, concurrently if `n_jobs > 1`; results keep input order"""
    items = list(items)
    if n_jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(n_jobs, len(items))) as pool:
        return list(pool.map(fn, items))
