"""Replicate-level parallel map that preserves index order.

Because every replicate derives its own random stream from its index,
results are identical whether replicates run sequentially or across a
process pool, and in whatever order the pool schedules them.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def replicate_map(fn, args_list, jobs: int = 1) -> list:
    """Apply ``fn`` to each element of ``args_list``, in index order.

    ``fn`` must be a module-level function when ``jobs > 1`` so the
    process pool can pickle it.
    """
    items = list(args_list)
    if jobs <= 1 or len(items) <= 1:
        return [fn(a) for a in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
