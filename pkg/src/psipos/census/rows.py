"""Which irreducibles can go negative, and the closed-form lower bound.

Throughout, a subset ``T`` of classes always contains the identity class.
The Schur coefficient of ``s_lambda`` in the class sum over ``T`` is
``f^lambda + sum_{mu in T, mu != 1^n} chi^lambda(mu)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from ..characters import full_table
from ..partitions import Partition, counting_suite, format_partition, partitions_of


@dataclass(frozen=True)
class Capable:
    """An irreducible and its worst-case coefficient over all subsets."""

    shape: Partition
    slack: int


def slacks(n: int) -> np.ndarray:
    """Per row: ``f^lambda`` plus every negative off-identity character value."""
    rows = full_table(n).rows
    return rows[:, 0] + np.minimum(rows[:, 1:], 0).sum(axis=1)


def negative_capable(n: int) -> list[Capable]:
    """Irreducibles with a negative coefficient for some subset, in revlex."""
    if n < 2:
        raise ValueError("negative_capable needs n >= 2")
    classes = partitions_of(n)
    s = slacks(n)
    return [Capable(classes[i], int(s[i])) for i in np.nonzero(s < 0)[0]]


def g(n: int) -> int:
    return len(negative_capable(n))


def lower_bound(n: int) -> int:
    """Subsets making the sign coefficient negative, as a binomial sum."""
    if n < 1:
        raise ValueError("n must be positive")
    c = counting_suite(n)
    return sum(comb(c.p - 1, i) for i in range(0, c.p - c.alpha - 1))


def sign_row_failures_by_parity(n: int) -> int:
    """The same count, split by class parity: ``a`` even and ``b >= a + 2`` odd."""
    c = counting_suite(n)
    return sum(comb(c.alpha - 1, a) * comb(c.beta, b) for a in range(c.alpha) for b in range(a + 2, c.beta + 1))


@dataclass
class CensusProblem:
    """Rows to watch and the off-identity character values on them.

    ``values[r, j]`` is the value of row ``r`` on class ``classes[j]``;
    ``start[r]`` is the row's value on the identity. A subset is bad when
    some row's running sum drops below zero.
    """

    n: int
    rows: list[Partition]
    classes: list[Partition]
    values: np.ndarray
    start: np.ndarray
    idle: int

    @property
    def g(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def total(self) -> int:
        """All subsets containing the identity, idle classes included."""
        return 1 << (self.m + self.idle)

    def fingerprint(self) -> str:
        import hashlib

        text = ";".join(format_partition(r) for r in self.rows) + "|" + ";".join(format_partition(c) for c in self.classes)
        return hashlib.sha256(f"{self.n}|{text}".encode()).hexdigest()


def census_problem(n: int, rows: Iterable[Iterable[int]] | None = None) -> CensusProblem:
    """Set up the counting problem on ``rows`` (default: the negative-capable rows).

    Classes on which every watched row vanishes never change a coefficient;
    they are dropped and counted in ``idle`` (each doubles every count).
    """
    table = full_table(n)
    if rows is None:
        chosen = [c.shape for c in negative_capable(n)]
    else:
        chosen = []
        for r in rows:
            lam = Partition(r)
            if sum(lam) != n:
                raise ValueError(f"row {format_partition(lam)} is not a partition of {n}")
            if lam not in chosen:
                chosen.append(lam)
        chosen.sort()
    idx = [table.index(lam) for lam in chosen]
    block = table.rows[idx, :] if idx else np.zeros((0, len(table.classes)), dtype=np.int64)
    off = block[:, 1:]
    live = np.nonzero(np.any(off != 0, axis=0))[0] if len(idx) else np.arange(0)
    classes = [table.classes[1 + j] for j in live]
    return CensusProblem(
        n=n,
        rows=chosen,
        classes=classes,
        values=np.ascontiguousarray(off[:, live], dtype=np.int64),
        start=np.ascontiguousarray(block[:, 0], dtype=np.int64),
        idle=(len(table.classes) - 1) - len(live),
    )


def subset_sums(columns: np.ndarray) -> np.ndarray:
    """Sums over all subsets of the given columns, one row per subset.

    ``columns`` has shape ``(k, g)``; subset ``s`` (bit ``j`` selects column
    ``j``) lands in row ``s`` of the ``(2^k, g)`` result.
    """
    k, width = columns.shape
    out = np.zeros((1 << k, width), dtype=np.int64)
    size = 1
    for j in range(k):
        np.add(out[:size], columns[j], out=out[size : 2 * size])
        size *= 2
    return out


@dataclass
class ThresholdCheck:
    n: int
    name: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def _m1(lam: Sequence[int]) -> int:
    return sum(1 for p in lam if p == 1)


def threshold_facts(n_range: Iterable[int]) -> list[ThresholdCheck]:
    """When the standard and its conjugate representation can go negative.

    ``(n-1,1)`` is negative-capable exactly from ``n = 10``, ``(2,1^(n-2))``
    exactly from ``n = 6``. Also checks the fixed-point counts behind the
    first fact and the three-way split of the standard character's values.
    """
    out: list[ThresholdCheck] = []
    for n in n_range:
        if n < 4:
            continue
        capable = {c.shape for c in negative_capable(n)}
        std = Partition((n - 1, 1))
        out.append(ThresholdCheck(n, "standard negative-capable", n >= 10, std in capable))
        out.append(ThresholdCheck(n, "conjugate standard negative-capable", n >= 6, Partition((2,) + (1,) * (n - 2)) in capable))
        p = [len(partitions_of(k)) for k in (n, n - 1, n - 2)]
        parts = partitions_of(n)
        out.append(ThresholdCheck(n, "classes without fixed points", p[0] - p[1], sum(1 for lam in parts if _m1(lam) == 0)))
        row = full_table(n).row(std)
        split = (
            sum(1 for v in row if v == -1),
            sum(1 for v in row if v == 0),
            sum(1 for v in row if v >= 1),
        )
        out.append(ThresholdCheck(n, "standard character values -1/0/positive", (p[0] - p[1], p[1] - p[2], p[2]), split))
        fixed = all(int(v) == _m1(lam) - 1 for v, lam in zip(row, parts))
        out.append(ThresholdCheck(n, "standard character is fixed points minus one", True, fixed))
    return out
