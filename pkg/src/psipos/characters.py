"""Irreducible characters of S_n by the Murnaghan-Nakayama rule.

Border strips are handled on beta-sets: a shape with ``l`` rows is encoded by
the distinct integers ``parts[i] + (l - 1 - i)``. Removing a strip of size
``k`` moves one bead from ``b`` to ``b - k`` (the target must be free); the
strip's sign is ``(-1)`` to the number of beads strictly between. The row of
the moved bead is the strip's starting row.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import numpy as np
import scipy.sparse as sp

from .partitions import (
    DegreeMismatch,
    Partition,
    centralizer_size,
    conjugate,
    format_partition,
    partition_index,
    partitions_of,
)

# largest magnitude stored in the int64 table (prefix sums must not overflow)
INT64_SAFE = 2**62


class CapacityError(RuntimeError):
    """A computation would exceed a representable or configured budget."""


def _shape_from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    ell = len(beta)
    parts = [b - (ell - 1 - i) for i, b in enumerate(beta)]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@lru_cache(maxsize=None)
def removable_strips(shape: tuple[int, ...], k: int) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """``(remaining shape, sign, starting row)`` for every border strip of size ``k``."""
    ell = len(shape)
    beta = [shape[i] + (ell - 1 - i) for i in range(ell)]
    occupied = set(beta)
    out = []
    for row, b in enumerate(beta):
        target = b - k
        if target < 0 or target in occupied:
            continue
        between = sum(1 for c in beta if target < c < b)
        new_beta = beta[:row] + [target] + beta[row + 1 :]
        out.append((_shape_from_beta(new_beta), -1 if between % 2 else 1, row))
    return tuple(out)


@lru_cache(maxsize=None)
def addable_strips(shape: tuple[int, ...], k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """``(enlarged shape, sign)`` for every border strip of size ``k`` that can be attached."""
    ell = len(shape) + k
    padded = list(shape) + [0] * k
    beta = [padded[i] + (ell - 1 - i) for i in range(ell)]
    occupied = set(beta)
    out = []
    for row, b in enumerate(beta):
        target = b + k
        if target in occupied:
            continue
        between = sum(1 for c in beta if b < c < target)
        new_beta = beta[:row] + [target] + beta[row + 1 :]
        out.append((_shape_from_beta(new_beta), -1 if between % 2 else 1))
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def _mn(shape: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not shape else 0
    k, rest = mu[0], mu[1:]
    total = 0
    for smaller, sign, _row in removable_strips(shape, k):
        total += sign * _mn(smaller, rest)
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """``chi^lam(mu)`` by recursive border-strip removal, largest part of ``mu`` first."""
    if sum(lam) != sum(mu):
        raise DegreeMismatch(f"{format_partition(lam)} vs class {format_partition(mu)}")
    return _mn(tuple(lam), tuple(mu))


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def dimension(lam: Partition) -> int:
    """Number of standard Young tableaux, by the hook length formula."""
    prod = 1
    for h in hook_lengths(lam):
        prod *= h
    return factorial(sum(lam)) // prod


def transposition_character(lam: Partition) -> int:
    """``chi^lam((2,1^{n-2}))`` from ``f^lam (b(lam') - b(lam)) / C(n, 2)``."""
    n = sum(lam)
    if n < 2:
        raise ValueError("transpositions need n >= 2")
    lam = Partition(lam)
    num = dimension(lam) * (conjugate(lam).b() - lam.b())
    q, r = divmod(num, comb(n, 2))
    assert r == 0, "content formula produced a non-integer"
    return q


@dataclass
class CharacterTable:
    n: int
    classes: tuple[Partition, ...]
    rows: np.ndarray
    z: tuple[int, ...]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = partition_index(self.n)

    @property
    def irreducibles(self) -> tuple[Partition, ...]:
        return self.classes

    def index(self, lam: Partition) -> int:
        return self._index[tuple(lam)]

    def row(self, lam: Partition) -> np.ndarray:
        return self.rows[self.index(lam)]

    def column(self, mu: Partition) -> np.ndarray:
        return self.rows[:, self.index(mu)]

    def value(self, lam: Partition, mu: Partition) -> int:
        return int(self.rows[self.index(lam), self.index(mu)])

    def dimensions(self) -> np.ndarray:
        return self.rows[:, 0]

    def row_partial_sums(self, lam: Partition) -> list[int]:
        return [int(x) for x in np.cumsum(self.row(lam))]

    def column_orthogonality_ok(self) -> bool:
        gram = self.rows.T.astype(object) @ self.rows.astype(object)
        expected = np.diag(np.array(self.z, dtype=object))
        return bool((gram == expected).all())

    def row_orthogonality_ok(self) -> bool:
        from fractions import Fraction

        inv_z = [Fraction(1, z) for z in self.z]
        rows = [[int(x) for x in r] for r in self.rows]
        for a in range(len(rows)):
            for b in range(a, len(rows)):
                s = sum(x * y * w for x, y, w in zip(rows[a], rows[b], inv_z))
                if s != (1 if a == b else 0):
                    return False
        return True

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda"] + [format_partition(mu) for mu in self.classes])
        for lam, r in zip(self.classes, self.rows):
            w.writerow([format_partition(lam)] + [int(x) for x in r])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "classes": [format_partition(mu) for mu in self.classes],
                "z": list(self.z),
                "rows": [
                    {"lambda": format_partition(lam), "values": [int(x) for x in r]}
                    for lam, r in zip(self.classes, self.rows)
                ],
            }
        )


def _removal_matrix(n: int, k: int) -> sp.csr_matrix:
    """Signed strip-removal incidence from partitions of ``n`` to those of ``n - k``."""
    src = partitions_of(n)
    dst_index = partition_index(n - k)
    rows, cols, vals = [], [], []
    for i, lam in enumerate(src):
        for smaller, sign, _row in removable_strips(tuple(lam), k):
            rows.append(i)
            cols.append(dst_index[smaller])
            vals.append(sign)
    return sp.csr_matrix(
        (np.array(vals, dtype=np.int64), (rows, cols)),
        shape=(len(src), len(dst_index)),
        dtype=np.int64,
    )


@lru_cache(maxsize=None)
def _table_rows(n: int) -> np.ndarray:
    if n == 0:
        return np.ones((1, 1), dtype=np.int64)
    classes = partitions_of(n)
    out = np.zeros((len(classes), len(classes)), dtype=np.int64)
    by_first: dict[int, list[tuple[int, int]]] = {}
    for j, mu in enumerate(classes):
        k = mu[0]
        rest_idx = partition_index(n - k)[mu[1:]]
        by_first.setdefault(k, []).append((j, rest_idx))
    for k, pairs in by_first.items():
        prev = _table_rows(n - k)
        cols = [j for j, _ in pairs]
        src = [r for _, r in pairs]
        out[:, cols] = _removal_matrix(n, k) @ prev[:, src]
    return out


@lru_cache(maxsize=None)
def full_table(n: int) -> CharacterTable:
    """Complete character table of S_n; rows and columns in ascending revlex."""
    if n < 1:
        raise ValueError("n must be positive")
    # the largest dimension bounds every entry and every prefix sum over p(n) columns
    if max(dimension(lam) for lam in partitions_of(n)) * len(partitions_of(n)) >= INT64_SAFE:
        raise CapacityError(f"character table of S_{n} does not fit 64-bit storage")
    classes = partitions_of(n)
    return CharacterTable(
        n=n,
        classes=classes,
        rows=_table_rows(n),
        z=tuple(centralizer_size(mu) for mu in classes),
    )


def character_row(lam: Partition) -> list[int]:
    """One row computed independently of :func:`full_table` (row-on-demand mode)."""
    lam_t = tuple(lam)
    return [_mn(lam_t, tuple(mu)) for mu in partitions_of(sum(lam))]


def row_partial_sums(lam: Partition) -> list[int]:
    """Prefix sums of row ``lam`` over the classes in ascending revlex.

    The entry at class ``mu`` is the multiplicity of ``s_lam`` in the sum of
    ``p_nu`` over the interval ``[(1^n), mu]``.
    """
    out, acc = [], 0
    for v in full_table(sum(lam)).row(lam):
        acc += int(v)
        out.append(acc)
    return out


def class_columns(n: int, classes: list[Partition]) -> np.ndarray:
    """Columns of the character table of S_n for the given classes only.

    Rows are all partitions of ``n`` in ascending revlex. Only the classes
    reachable by deleting leading parts are evaluated at smaller degrees, so
    a family such as the all-odd classes costs far less than the whole table.
    """
    if max(dimension(lam) for lam in partitions_of(n)) * len(partitions_of(n)) >= INT64_SAFE:
        raise CapacityError(f"character values of S_{n} do not fit 64-bit storage")
    needed: dict[int, set[tuple[int, ...]]] = {}
    stack = [tuple(mu) for mu in classes]
    while stack:
        mu = stack.pop()
        bucket = needed.setdefault(sum(mu), set())
        if mu in bucket:
            continue
        bucket.add(mu)
        if mu:
            stack.append(mu[1:])
    solved: dict[int, tuple[dict[tuple[int, ...], int], np.ndarray]] = {
        0: ({(): 0}, np.ones((1, 1), dtype=np.int64))
    }
    for m in sorted(k for k in needed if k > 0):
        cols = sorted(needed[m])
        out = np.zeros((len(partitions_of(m)), len(cols)), dtype=np.int64)
        by_first: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        for j, mu in enumerate(cols):
            by_first.setdefault(mu[0], []).append((j, mu[1:]))
        for k, pairs in by_first.items():
            pos, prev = solved[m - k]
            out[:, [j for j, _ in pairs]] = _removal_matrix(m, k) @ prev[:, [pos[r] for _, r in pairs]]
        solved[m] = ({mu: j for j, mu in enumerate(cols)}, out)
    pos, mat = solved[n]
    return mat[:, [pos[tuple(mu)] for mu in classes]]
