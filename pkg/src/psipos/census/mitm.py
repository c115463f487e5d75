"""Meet-in-the-middle counting of Schur-positive subsets.

The live classes are split into a point half and a query half. Every subset
is a pair (point subset ``a``, query subset ``b``), and it is good when
``start + a + b >= 0`` in every watched row, i.e. when the point ``a``
dominates ``q = -start - b`` coordinatewise. So the good count is a
dominance-pair count between ``2^|A|`` points and ``2^|B|`` queries.

Counting structure: points are sorted by one coordinate, which turns that
bound into a suffix. Each remaining coordinate gets one bitset per distinct
query bound (bit ``i`` set when sorted point ``i`` meets the bound). A query
ANDs one bitset per coordinate over its suffix and counts bits. Queries are
deduplicated with multiplicities first.

Half enumerations and sweep progress can be checkpointed to a directory so
an interrupted run resumes where it stopped.
"""

from __future__ import annotations

import json
import os
import struct
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from ..characters import CapacityError
from ._jit import jit_enabled, set_threads
from .rows import CensusProblem, subset_sums

MITM_MAX_HALF = 26
BITSET_BUDGET_BYTES = 2 << 30
SWEEP_CHUNK = 1 << 14

_MAGIC = b"PSIPOSMM"
_VERSION = 1
_HEADER = struct.Struct("<8sHHBBQ32s")


# ---------------------------------------------------------------- halves


def split_classes(problem: CensusProblem) -> tuple[np.ndarray, np.ndarray]:
    """Indices of the point half and the query half.

    The halves differ in size by at most one. Classes with the largest
    spread of values go to the smaller (point) half so the query side,
    which is deduplicated, sees the narrower coordinate ranges.
    """
    values = problem.values
    spread = values.max(axis=0) - values.min(axis=0) if problem.m else np.zeros(0)
    spread = spread + np.abs(values).sum(axis=0) if problem.m else spread
    order = sorted(range(problem.m), key=lambda j: (-int(spread[j]), j))
    k = problem.m // 2
    return np.array(sorted(order[:k]), dtype=np.int64), np.array(sorted(order[k:]), dtype=np.int64)


def _write_half(path: Path, problem: CensusProblem, half: int, sums: np.ndarray) -> None:
    digest = bytes.fromhex(problem.fingerprint())
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, problem.n, half, problem.g, sums.shape[0], digest))
        fh.write(np.ascontiguousarray(sums, dtype="<i8").tobytes())
    os.replace(tmp, path)


def _read_half(path: Path, problem: CensusProblem, half: int) -> np.ndarray | None:
    if not path.exists():
        return None
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            return None
        magic, version, n, hid, g, count, digest = _HEADER.unpack(head)
        if (magic, version, n, hid, g, digest) != (_MAGIC, _VERSION, problem.n, half, problem.g, bytes.fromhex(problem.fingerprint())):
            return None
        data = np.frombuffer(fh.read(), dtype="<i8")
    if data.size != count * g:
        return None
    return data.reshape(count, g).astype(np.int64)


def half_sums(problem: CensusProblem, cols: np.ndarray, half: int, checkpoint: Path | None) -> np.ndarray:
    if checkpoint is not None:
        path = checkpoint / f"half-{half}.bin"
        cached = _read_half(path, problem, half)
        if cached is not None:
            return cached
    sums = subset_sums(np.ascontiguousarray(problem.values[:, cols].T))
    if checkpoint is not None:
        _write_half(checkpoint / f"half-{half}.bin", problem, half, sums)
    return sums


# ---------------------------------------------------------------- counting


@dataclass
class DominanceIndex:
    """Sorted points plus one bitset per (coordinate, query bound)."""

    first: np.ndarray
    bits: np.ndarray
    bounds: list[np.ndarray]
    offsets: list[int]
    n_points: int


def build_index(points: np.ndarray, queries: np.ndarray) -> DominanceIndex:
    """Index ``points`` for bounds drawn from the columns of ``queries``.

    Column 0 is the sort coordinate; the rest get bitsets.
    """
    n_points = points.shape[0]
    order = np.argsort(points[:, 0], kind="stable")
    pts = points[order]
    words = (n_points + 63) // 64
    bounds = [np.unique(queries[:, d]) for d in range(1, points.shape[1])]
    need = sum(len(b) for b in bounds) * words * 8
    if need > BITSET_BUDGET_BYTES:
        raise CapacityError(f"dominance index needs {need / 2**30:.1f} GiB of bitsets")
    bits = np.zeros((sum(len(b) for b in bounds), words), dtype=np.uint64)
    offsets = []
    row = 0
    for d, vals in enumerate(bounds, start=1):
        offsets.append(row)
        col = pts[:, d]
        step = max(1, (64 << 20) // max(1, n_points))
        for s in range(0, len(vals), step):
            chunk = vals[s : s + step]
            packed = np.packbits(col[None, :] >= chunk[:, None], axis=1, bitorder="little")
            pad = words * 8 - packed.shape[1]
            if pad:
                packed = np.pad(packed, ((0, 0), (0, pad)))
            bits[row + s : row + s + len(chunk)] = packed.view("<u8")
        row += len(vals)
    return DominanceIndex(pts[:, 0].copy(), bits, bounds, offsets, n_points)


def _query_arrays(index: DominanceIndex, queries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lo = np.searchsorted(index.first, queries[:, 0], side="left").astype(np.int64)
    idx = np.empty((queries.shape[0], len(index.bounds)), dtype=np.int64)
    for d, (vals, off) in enumerate(zip(index.bounds, index.offsets)):
        idx[:, d] = off + np.searchsorted(vals, queries[:, d + 1])
    return lo, idx


def _sweep_numpy(index: DominanceIndex, lo: np.ndarray, idx: np.ndarray) -> np.ndarray:
    out = np.zeros(lo.shape[0], dtype=np.int64)
    n = index.n_points
    if idx.shape[1] == 0:
        return np.maximum(n - lo, 0)
    for q in range(lo.shape[0]):
        start = int(lo[q])
        if start >= n:
            continue
        w0 = start >> 6
        acc = index.bits[idx[q, 0], w0:].copy()
        for d in range(1, idx.shape[1]):
            acc &= index.bits[idx[q, d], w0:]
        acc[0] &= np.uint64((~0 << (start & 63)) & 0xFFFFFFFFFFFFFFFF)
        out[q] = int(np.bitwise_count(acc).sum())
    return out


def count_dominating_pairs(
    points: np.ndarray,
    queries: np.ndarray,
    weights: np.ndarray,
    use_jit: bool | None = None,
    progress: "_Progress | None" = None,
) -> int:
    """``sum_q weights[q] * #{p : p >= queries[q] coordinatewise}``."""
    if points.shape[1] == 0:
        return int(weights.sum()) * points.shape[0]
    if use_jit is None:
        use_jit = jit_enabled()
    index = build_index(points, queries)
    lo, idx = _query_arrays(index, queries)
    if use_jit:
        from .kernels import bitset_sweep

        def sweep(a: np.ndarray, b: np.ndarray) -> np.ndarray:
            return bitset_sweep(index.bits, a, np.ascontiguousarray(b), index.n_points)

    else:

        def sweep(a: np.ndarray, b: np.ndarray) -> np.ndarray:
            return _sweep_numpy(index, a, b)

    total = 0
    first_chunk = 0
    if progress is not None:
        first_chunk, total = progress.load()
    chunks = range(0, lo.shape[0], SWEEP_CHUNK)
    for c, s in enumerate(chunks):
        if c < first_chunk:
            continue
        counts = sweep(lo[s : s + SWEEP_CHUNK], idx[s : s + SWEEP_CHUNK])
        total += int((counts.astype(object) * weights[s : s + SWEEP_CHUNK].astype(object)).sum())
        if progress is not None:
            progress.save(c + 1, total)
    return total


class _Progress:
    """Sweep progress for one row selection, stored as JSON next to the halves."""

    def __init__(self, path: Path, key: dict):
        self.path = path
        self.key = key

    def load(self) -> tuple[int, int]:
        if not self.path.exists():
            return 0, 0
        try:
            data = json.loads(self.path.read_text())
        except (OSError, ValueError):
            return 0, 0
        if data.get("key") != self.key:
            return 0, 0
        return int(data["chunks_done"]), int(data["partial"])

    def save(self, chunks_done: int, partial: int) -> None:
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": self.key, "chunks_done": chunks_done, "partial": partial}))
        os.replace(tmp, self.path)


# ---------------------------------------------------------------- driver


@dataclass
class MitmPlan:
    points: np.ndarray
    queries: np.ndarray
    point_half: np.ndarray
    query_half: np.ndarray


def plan(problem: CensusProblem, checkpoint: str | os.PathLike | None = None) -> MitmPlan:
    a_idx, b_idx = split_classes(problem)
    if max(len(a_idx), len(b_idx)) > MITM_MAX_HALF:
        raise CapacityError(
            f"meet-in-the-middle halves of 2^{len(a_idx)} and 2^{len(b_idx)} subsets exceed the 2^{MITM_MAX_HALF} budget"
        )
    ck = Path(checkpoint) if checkpoint is not None else None
    if ck is not None:
        ck.mkdir(parents=True, exist_ok=True)
    points = half_sums(problem, a_idx, 0, ck)
    queries = -problem.start - half_sums(problem, b_idx, 1, ck)
    return MitmPlan(points, queries, a_idx, b_idx)


def unique_rows(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows of ``a`` in lexicographic order, with their multiplicities.

    Rows are packed into one mixed-radix int64 key when the coordinate
    ranges allow it, which sorts much faster than ``np.unique(axis=0)``.
    """
    if a.shape[1] == 0 or a.shape[0] == 0:
        return np.unique(a, axis=0, return_counts=True)
    lo = a.min(axis=0)
    span = a.max(axis=0) - lo + 1
    if float(np.prod(span.astype(np.float64))) >= 2.0**62:
        return np.unique(a, axis=0, return_counts=True)
    key = np.zeros(a.shape[0], dtype=np.int64)
    for d in range(a.shape[1]):
        key *= int(span[d])
        key += a[:, d] - lo[d]
    keys, counts = np.unique(key, return_counts=True)
    out = np.empty((keys.shape[0], a.shape[1]), dtype=a.dtype)
    for d in range(a.shape[1] - 1, -1, -1):
        keys, digit = np.divmod(keys, int(span[d]))
        out[:, d] = digit + lo[d]
    return out, counts


def good_count(
    problem: CensusProblem,
    dims: tuple[int, ...],
    mitm: MitmPlan,
    use_jit: bool | None = None,
    checkpoint: str | os.PathLike | None = None,
) -> int:
    """Subsets of live classes on which every row in ``dims`` stays non-negative."""
    if not dims:
        return 1 << problem.m
    q_all = mitm.queries[:, list(dims)]
    uniq, counts = unique_rows(q_all)
    # Sort coordinate: the one with the most distinct bounds needs no bitsets.
    distinct = [len(np.unique(uniq[:, d])) for d in range(len(dims))]
    lead = int(np.argmax(distinct))
    perm = [lead] + [d for d in range(len(dims)) if d != lead]
    pts = np.ascontiguousarray(mitm.points[:, [dims[d] for d in perm]])
    qs = np.ascontiguousarray(uniq[:, perm])
    progress = None
    if checkpoint is not None:
        key = {"version": _VERSION, "n": problem.n, "fingerprint": problem.fingerprint(), "dims": list(dims), "chunk": SWEEP_CHUNK}
        name = "sweep-" + "-".join(map(str, dims)) + ".json"
        progress = _Progress(Path(checkpoint) / name, key)
    return count_dominating_pairs(pts, qs, counts.astype(np.int64), use_jit, progress)


def mitm_counts(
    problem: CensusProblem,
    threads: int | None = None,
    use_jit: bool | None = None,
    checkpoint: str | os.PathLike | None = None,
    breakdown: str = "rows",
) -> tuple[int, dict[int, int], np.ndarray | None]:
    """Good-subset counts over live classes.

    Returns the all-rows good count, the per-row good counts, and, with
    ``breakdown="joint"``, the full negative-pattern histogram recovered by
    inclusion-exclusion over every row selection.
    """
    if use_jit is None:
        use_jit = jit_enabled()
    if use_jit:
        set_threads(threads)
    mitm = plan(problem, checkpoint)
    g = problem.g
    everything = tuple(range(g))
    good_all = good_count(problem, everything, mitm, use_jit, checkpoint)
    per_row = {r: good_count(problem, (r,), mitm, use_jit, checkpoint) for r in range(g)}
    hist = None
    if breakdown == "joint":
        good = {(): 1 << problem.m, everything: good_all}
        for r in range(g):
            good[(r,)] = per_row[r]
        for size in range(2, g):
            for dims in combinations(range(g), size):
                good[dims] = good_count(problem, dims, mitm, use_jit, checkpoint)
        hist = pattern_histogram(g, good)
    return good_all, per_row, hist


def pattern_histogram(g: int, good: dict[tuple[int, ...], int]) -> np.ndarray:
    """Exact negative-pattern counts from good counts of every row selection.

    ``good[R]`` counts subsets with no negative row inside ``R``, i.e. whose
    pattern lies inside the complement of ``R``. Mobius inversion over the
    subset lattice recovers the pattern counts.
    """
    full = (1 << g) - 1
    below = np.zeros(1 << g, dtype=object)
    for dims, value in good.items():
        mask = 0
        for d in dims:
            mask |= 1 << d
        below[full ^ mask] = value
    hist = np.zeros(1 << g, dtype=object)
    for s in range(1 << g):
        t = s
        total = 0
        while True:
            total += (-1) ** (bin(s ^ t).count("1")) * below[t]
            if t == 0:
                break
            t = (t - 1) & s
        hist[s] = total
    return hist
