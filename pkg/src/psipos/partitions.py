"""Integer partitions: ordering, conjugation, predicates and counts.

A :class:`Partition` is a tuple of weakly decreasing positive parts. Tuple
comparison of two partitions of the same ``n`` coincides with reverse
lexicographic order, so ``sorted`` gives the ascending chain
``(1^n) < ... < (n)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator


class DegreeMismatch(ValueError):
    """Two partitions (or a partition and a class) have different sizes."""


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        if parts and parts[-1] <= 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple[int, ...]) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return self.count(i)

    def multiplicities(self) -> dict[int, int]:
        m: dict[int, int] = {}
        for p in self:
            m[p] = m.get(p, 0) + 1
        return m

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def sign(self) -> int:
        return -1 if (self.n - len(self)) % 2 else 1

    def b(self) -> int:
        """``sum_i (i - 1) * parts[i]`` with 1-based ``i``."""
        return sum(i * p for i, p in enumerate(self))

    def __repr__(self) -> str:
        return format_partition(self)

    __str__ = __repr__


def P(*parts: int) -> Partition:
    """Shorthand constructor: ``P(3, 1, 1)``."""
    return Partition(parts)


_EXP = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"[3,1,1]"``, ``"[3,1^2]"``, ``"3,1^2"`` or ``"()"`` forms."""
    body = text.strip()
    if body[:1] in "[(" and body[-1:] in "])":
        body = body[1:-1]
    body = body.strip()
    if not body:
        return Partition(())
    parts: list[int] = []
    for token in body.split(","):
        m = _EXP.match(token)
        if not m:
            raise ValueError(f"bad partition syntax: {text!r}")
        part, exp = int(m.group(1)), int(m.group(2) or 1)
        if part <= 0:
            raise ValueError(f"bad partition syntax: {text!r}")
        parts.extend([part] * exp)
    parts.sort(reverse=True)
    return Partition(parts)


def format_partition(lam: Iterable[int]) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


def _check_same_degree(a: Partition, b: Partition) -> None:
    if sum(a) != sum(b):
        raise DegreeMismatch(f"{format_partition(a)} and {format_partition(b)} have different sizes")


@lru_cache(maxsize=None)
def _partitions_desc(n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_desc(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in ascending reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    desc = _partitions_desc(n, n)
    return tuple(Partition._trusted(p) for p in reversed(desc))


@lru_cache(maxsize=None)
def partition_index(n: int) -> dict[Partition, int]:
    """Position of each partition of ``n`` within :func:`partitions_of`."""
    return {lam: i for i, lam in enumerate(partitions_of(n))}


def revlex_compare(a: Partition, b: Partition) -> int:
    """Return -1, 0 or 1 as ``a`` precedes, equals or follows ``b``."""
    _check_same_degree(a, b)
    ta, tb = tuple(a), tuple(b)
    return (ta > tb) - (ta < tb)


def conjugate(lam: Iterable[int]) -> Partition:
    parts = tuple(lam)
    if not parts:
        return Partition._trusted(())
    return Partition._trusted(tuple(sum(1 for p in parts if p > j) for j in range(parts[0])))


def dominance_leq(a: Partition, b: Partition) -> bool:
    """True iff every prefix sum of ``a`` is at most that of ``b``."""
    _check_same_degree(a, b)
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa > sb:
            return False
    return True


def centralizer_size(lam: Iterable[int]) -> int:
    """``z_lambda = prod_i i^{m_i} m_i!``."""
    z = 1
    for part, mult in Partition(lam).multiplicities().items():
        z *= part**mult * factorial(mult)
    return z


@dataclass(frozen=True)
class Predicates:
    all_odd: bool
    odd_distinct: bool
    parts_in_1_2: bool
    sign: int


def predicates(lam: Partition) -> Predicates:
    all_odd = all(p % 2 for p in lam)
    return Predicates(
        all_odd=all_odd,
        odd_distinct=all_odd and len(set(lam)) == len(lam),
        parts_in_1_2=all(p in (1, 2) for p in lam),
        sign=Partition(lam).sign(),
    )


@dataclass(frozen=True)
class Counts:
    n: int
    p: int
    self_conjugate: int
    odd_distinct: int
    odd_parts: int
    alpha: int
    beta: int
    do: int
    distinct_parts_total: int
    even_count_of_even_parts: int


def counting_suite(n: int) -> Counts:
    """Partition statistics of ``n``, all by direct enumeration."""
    if n < 1:
        raise ValueError("n must be positive")
    parts = partitions_of(n)
    self_conj = odd_distinct = odd_parts = alpha = do = distinct_total = even_even = 0
    for lam in parts:
        pr = predicates(lam)
        if conjugate(lam) == lam:
            self_conj += 1
        if pr.odd_distinct:
            odd_distinct += 1
            if len(lam) >= 2:
                do += 1
        if pr.all_odd:
            odd_parts += 1
        if pr.sign == 1:
            alpha += 1
        if sum(1 for p in lam if p % 2 == 0) % 2 == 0:
            even_even += 1
        distinct_total += len(set(lam))
    return Counts(
        n=n,
        p=len(parts),
        self_conjugate=self_conj,
        odd_distinct=odd_distinct,
        odd_parts=odd_parts,
        alpha=alpha,
        beta=len(parts) - alpha,
        do=do,
        distinct_parts_total=distinct_total,
        even_count_of_even_parts=even_even,
    )


def hook(n: int, r: int) -> Partition:
    """The hook ``(n - r, 1^r)``."""
    return Partition._trusted((n - r,) + (1,) * r)


def iter_all_partitions(max_n: int) -> Iterator[Partition]:
    for n in range(max_n + 1):
        yield from partitions_of(n)
