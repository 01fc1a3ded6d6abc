"""Deterministic path-block scheduling and heavy-tail-safe summaries.

Every experiment maps a pure block function over index ranges [start, stop):
path k draws only from its own stream, so the decomposition into blocks is
invisible in the results and any worker count yields bit-identical output.
Blocks come back keyed by their position and are concatenated in index order.
"""

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..errors import DomainError


def run_blocks(block_fn, payload, n_items: int, workers: int = 1, block_size: int = 256):
    """Concatenation of block_fn(payload, start, stop) over a fixed partition.

    block_fn must be a module-level function returning an ndarray whose
    leading axis has length stop - start (trailing axes free); payload must
    pickle.  The partition depends only on n_items and block_size, never on
    workers.
    """
    if n_items <= 0:
        raise DomainError(f"n_items must be positive, got {n_items}")
    edges = list(range(0, n_items, block_size)) + [n_items]
    spans = list(zip(edges[:-1], edges[1:]))
    if workers <= 1 or len(spans) == 1:
        parts = [block_fn(payload, s, e) for s, e in spans]
    else:
        parts = [None] * len(spans)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(block_fn, payload, s, e): i for i, (s, e) in enumerate(spans)}
            for fut, i in futures.items():
                parts[i] = fut.result()
    return np.concatenate(parts, axis=0)


# summaries --------------------------------------------------------------------


def batch_means(samples, batches: int = 32) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.size < batches:
        raise DomainError(f"need at least {batches} samples for batch means, got {arr.size}")
    return np.array([b.mean() for b in np.array_split(arr, batches)])


def mean_with_se(samples, batches: int = 32):
    """Plain mean; standard error from contiguous batch means."""
    arr = np.asarray(samples, dtype=float)
    bm = batch_means(arr, batches)
    return float(arr.mean()), float(bm.std(ddof=1) / math.sqrt(bm.size))


def median_of_means(samples, groups: int = 32):
    """Median of contiguous group means, for integrands with fat one-sided tails.

    The sqrt(pi/2) factor is the asymptotic price of the median over the mean
    when the group means are already near-normal; it keeps the quoted error
    honest rather than optimistic.
    """
    arr = np.asarray(samples, dtype=float)
    gm = batch_means(arr, groups)
    est = float(np.median(gm))
    se = float(math.sqrt(math.pi / 2.0) * gm.std(ddof=1) / math.sqrt(gm.size))
    return est, se
