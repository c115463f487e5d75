"""numba kernels for subset enumeration and bitset dominance counting.

Each kernel has a numpy counterpart in ``direct.py`` or ``mitm.py``; the two
are compared by the test suite and by the benchmark.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange, types
from numba.extending import intrinsic

from . import _jit  # noqa: F401  (installs the threading-layer warning filter)


@njit(cache=True)
def _gray_block(cols, base, hist):
    """Visit all subsets of ``cols`` rows in Gray-code order.

    ``base`` holds the running sums before any enumerated class is added.
    ``hist[mask]`` counts subsets whose set of negative coordinates is
    ``mask`` (bit ``r`` for coordinate ``r``).
    """
    m, g = cols.shape
    s = base.copy()
    chosen = np.zeros(m, np.bool_)
    mask = 0
    for r in range(g):
        if s[r] < 0:
            mask |= 1 << r
    hist[mask] += 1
    total = np.int64(1) << m
    for i in range(1, total):
        j = 0
        while ((i >> j) & 1) == 0:
            j += 1
        if chosen[j]:
            for r in range(g):
                s[r] -= cols[j, r]
        else:
            for r in range(g):
                s[r] += cols[j, r]
        chosen[j] = not chosen[j]
        mask = 0
        for r in range(g):
            if s[r] < 0:
                mask |= 1 << r
        hist[mask] += 1


@njit(cache=True, parallel=True)
def gray_histogram(cols, bases, n_masks):
    """One Gray-code sweep per shard start in ``bases``; per-shard histograms."""
    shards = bases.shape[0]
    out = np.zeros((shards, n_masks), np.int64)
    for k in prange(shards):
        _gray_block(cols, bases[k], out[k])
    return out


@intrinsic
def _popcount(typingctx, x):
    """Hardware population count (LLVM ``ctpop``) of a ``uint64``."""
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@njit(cache=True, parallel=True)
def bitset_sweep(bits, lo, idx, n_points):
    """Count points selected by each query.

    Points are sorted by their first coordinate; query ``q`` keeps the
    suffix starting at ``lo[q]`` and, for every other coordinate ``d``, the
    bitset row ``idx[q, d]`` of points meeting that coordinate's bound
    (``-1`` means no point does).
    """
    q_count = lo.shape[0]
    dims = idx.shape[1]
    words = bits.shape[1]
    out = np.zeros(q_count, np.int64)
    for q in prange(q_count):
        start = lo[q]
        if start >= n_points:
            continue
        empty = False
        for d in range(dims):
            if idx[q, d] < 0:
                empty = True
        if empty:
            continue
        if dims == 0:
            out[q] = n_points - start
            continue
        w0 = start >> 6
        total = np.uint64(0)
        for w in range(w0, words):
            x = bits[idx[q, 0], w]
            for d in range(1, dims):
                x &= bits[idx[q, d], w]
            if w == w0:
                x &= ~np.uint64(0) << np.uint64(start & 63)
            total += _popcount(x)
        out[q] = np.int64(total)
    return out
