"""Deterministic reduction helpers.

Every sum evaluator in the package reduces through `pairwise_sum` so the
result is a fixed function of the inputs: block sums in index order, then
a fixed-shape pairwise tree.  Thread counts never change the answer
because threads only ever compute independent blocks that are reduced in
index order afterwards.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

SUM_BLOCK = 4096


def pairwise_sum(values, block: int = SUM_BLOCK):
    """Blocked pairwise summation with a deterministic reduction tree."""
    arr = np.asarray(values)
    if arr.size == 0:
        return arr.dtype.type(0)
    if arr.size <= block:
        return arr.sum()
    starts = np.arange(0, arr.size, block)
    sums = np.add.reduceat(arr, starts)
    while sums.size > 1:
        even = sums.size // 2 * 2
        head = sums[0:even:2] + sums[1:even:2]
        sums = head if even == sums.size else np.concatenate([head, sums[even:]])
    return sums[0]


def thread_map(fn, items, threads: int = 1):
    """Ordered map; optionally fans out over a thread pool.

    Output order always follows `items`, so any reduction over the result
    is independent of the worker count.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
