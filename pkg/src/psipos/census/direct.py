"""Exhaustive subset enumeration.

The result is a histogram over negative-row patterns: ``hist[mask]`` is the
number of subsets whose negative rows are exactly the bits of ``mask``.
Everything else (``f``, per-row counts, joint counts) is read off it.

The class list is split into fixed high classes (one shard per choice) and
enumerated low classes. The numba path walks each shard in Gray-code order,
updating one column of running sums per step. The numpy path materialises
all low-subset sums once and adds each shard's offset to the whole block.
"""

from __future__ import annotations

import numpy as np

from ..characters import CapacityError
from ._jit import jit_enabled, set_threads
from .rows import CensusProblem, subset_sums

DIRECT_MAX_CLASSES = 36
NUMPY_BLOCK_BITS = 18


def _estimate(m: int) -> str:
    # About 2.5 ns per subset step with the numba kernel on one core.
    seconds = (1 << m) * 2.5e-9
    return f"2^{m} subsets, roughly {seconds / 3600:.1f} h single-threaded"


def direct_histogram(problem: CensusProblem, threads: int | None = None, use_jit: bool | None = None) -> np.ndarray:
    """Histogram of negative-row patterns over all ``2^m`` subsets of live classes.

    Idle classes are not included; multiply by ``2^idle`` for full counts.
    """
    m, g = problem.m, problem.g
    if m > DIRECT_MAX_CLASSES:
        raise CapacityError(f"direct enumeration over {_estimate(m)} exceeds the budget; use the mitm strategy")
    if g == 0:
        hist = np.zeros(1, dtype=np.int64)
        hist[0] = 1 << m
        return hist
    if use_jit is None:
        use_jit = jit_enabled()
    cols = np.ascontiguousarray(problem.values.T)  # (m, g)
    if use_jit:
        return _direct_jit(cols, problem.start, g, threads)
    return _direct_numpy(cols, problem.start, g)


def _split(m: int, low_cap: int, min_shards: int) -> int:
    """Number of low (enumerated) classes."""
    low = min(m, low_cap)
    while low > 0 and (1 << (m - low)) < min_shards:
        low -= 1
    return low


def _direct_jit(cols: np.ndarray, start: np.ndarray, g: int, threads: int | None) -> np.ndarray:
    from .kernels import gray_histogram

    workers = set_threads(threads)
    m = cols.shape[0]
    low = _split(m, 26, 4 * workers if workers > 1 else 1)
    bases = subset_sums(cols[low:]) + start
    shards = gray_histogram(np.ascontiguousarray(cols[:low]), np.ascontiguousarray(bases), 1 << g)
    return shards.sum(axis=0)


def _direct_numpy(cols: np.ndarray, start: np.ndarray, g: int) -> np.ndarray:
    m = cols.shape[0]
    low = min(m, NUMPY_BLOCK_BITS)
    block = subset_sums(cols[:low]) + start
    weights = (1 << np.arange(g, dtype=np.int64))
    hist = np.zeros(1 << g, dtype=np.int64)
    high = subset_sums(cols[low:])
    scratch = np.empty_like(block)
    for offset in high:
        np.add(block, offset, out=scratch)
        masks = (scratch < 0) @ weights
        hist += np.bincount(masks, minlength=1 << g)
    return hist
