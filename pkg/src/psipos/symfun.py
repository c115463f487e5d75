"""Exact symmetric functions in the Schur and power-sum bases.

Schur vectors are homogeneous with integer coefficients. Power vectors are
graded with :class:`fractions.Fraction` coefficients, because useful objects
such as the cyclic characteristic ``f_n`` are integral only after conversion.
Products are taken in the power-sum basis, where ``p_a * p_b = p_{a u b}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

from .characters import _mn, addable_strips, full_table
from .partitions import (
    DegreeMismatch,
    Partition,
    centralizer_size,
    conjugate,
    format_partition,
    parse_partition,
    partitions_of,
)

Number = Union[int, Fraction]

# tables up to this degree are built whole; beyond it, single entries are evaluated on demand
WHOLE_TABLE_MAX_N = 22


class IntegralityError(ArithmeticError):
    """A Schur coefficient that must be an integer came out fractional."""

    def __init__(self, lam: Partition, value: Fraction):
        super().__init__(f"non-integral Schur coefficient {value} at {format_partition(lam)}")
        self.lam = lam
        self.value = value


def _key(parts: Iterable[int]) -> Partition:
    return Partition._trusted(tuple(sorted(parts, reverse=True)))


class SchurVector:
    """Homogeneous integer combination of Schur functions of degree ``n``."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[Iterable[int], int] | None = None):
        self.n = n
        c: dict[Partition, int] = {}
        for lam, v in (coeffs or {}).items():
            lam = Partition(lam)
            if sum(lam) != n:
                raise DegreeMismatch(f"{format_partition(lam)} in a degree-{n} Schur vector")
            v = int(v)
            if v:
                c[lam] = c.get(lam, 0) + v
                if not c[lam]:
                    del c[lam]
        self._c = c

    @classmethod
    def _from_clean(cls, n: int, c: dict[Partition, int]) -> "SchurVector":
        obj = cls.__new__(cls)
        obj.n = n
        obj._c = c
        return obj

    @classmethod
    def s(cls, *parts: int) -> "SchurVector":
        lam = Partition(parts)
        return cls._from_clean(sum(lam), {lam: 1})

    def __getitem__(self, lam: Iterable[int]) -> int:
        return self._c.get(Partition(lam), 0)

    def coefficient(self, lam: Iterable[int]) -> int:
        return self[lam]

    def items(self) -> Iterator[tuple[Partition, int]]:
        """Terms in ascending reverse-lexicographic order."""
        return iter(sorted(self._c.items()))

    def support(self) -> list[Partition]:
        return sorted(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchurVector):
            return NotImplemented
        if not self._c and not other._c:
            return True
        return self.n == other.n and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._c.items())))

    def _combine(self, other: "SchurVector", sign: int) -> "SchurVector":
        if not isinstance(other, SchurVector):
            return NotImplemented
        if other._c and self._c and other.n != self.n:
            raise DegreeMismatch(f"degree {self.n} vs {other.n}")
        n = self.n if self._c else other.n
        c = dict(self._c)
        for lam, v in other._c.items():
            t = c.get(lam, 0) + sign * v
            if t:
                c[lam] = t
            else:
                c.pop(lam, None)
        return SchurVector._from_clean(n, c)

    def __add__(self, other: "SchurVector") -> "SchurVector":
        return self._combine(other, 1)

    def __sub__(self, other: "SchurVector") -> "SchurVector":
        return self._combine(other, -1)

    def __neg__(self) -> "SchurVector":
        return SchurVector._from_clean(self.n, {k: -v for k, v in self._c.items()})

    def __mul__(self, k: int) -> "SchurVector":
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return SchurVector(self.n)
        return SchurVector._from_clean(self.n, {lam: k * v for lam, v in self._c.items()})

    __rmul__ = __mul__

    def max_abs(self, exclude: Iterable[Iterable[int]] = ()) -> int:
        skip = {tuple(x) for x in exclude}
        return max((abs(v) for lam, v in self._c.items() if lam not in skip), default=0)

    def to_text(self) -> str:
        """One ``coefficient<TAB>[partition]`` line per term, descending revlex."""
        return "".join(
            f"{v}\t{format_partition(lam)}\n" for lam, v in sorted(self._c.items(), reverse=True)
        )

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "SchurVector":
        c: dict[Partition, int] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            coef, part = line.split("\t") if "\t" in line else line.split(None, 1)
            lam = parse_partition(part)
            c[lam] = c.get(lam, 0) + int(coef)
            if n is None:
                n = sum(lam)
        return cls(n or 0, c)

    def to_json_obj(self) -> list[dict]:
        return [
            {"partition": format_partition(lam), "coefficient": v}
            for lam, v in sorted(self._c.items(), reverse=True)
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for lam, v in sorted(self._c.items(), reverse=True):
            body = "s" + format_partition(lam)
            terms.append(body if v == 1 else f"-{body}" if v == -1 else f"{v}*{body}")
        return " + ".join(terms).replace("+ -", "- ")


class PowerVector:
    """Graded rational combination of power-sum products ``p_lambda``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Iterable[int], Number] | None = None):
        c: dict[Partition, Fraction] = {}
        for lam, v in (coeffs or {}).items():
            key = _key(lam)
            t = c.get(key, Fraction(0)) + Fraction(v)
            if t:
                c[key] = t
            else:
                c.pop(key, None)
        self._c = c

    @classmethod
    def _from_clean(cls, c: dict[Partition, Fraction]) -> "PowerVector":
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def p(cls, *parts: int) -> "PowerVector":
        return cls._from_clean({_key(parts): Fraction(1)})

    @classmethod
    def one(cls) -> "PowerVector":
        return cls._from_clean({Partition._trusted(()): Fraction(1)})

    @classmethod
    def zero(cls) -> "PowerVector":
        return cls._from_clean({})

    def __getitem__(self, lam: Iterable[int]) -> Fraction:
        return self._c.get(_key(lam), Fraction(0))

    def items(self) -> Iterator[tuple[Partition, Fraction]]:
        return iter(sorted(self._c.items(), key=lambda kv: (sum(kv[0]), kv[0])))

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def degrees(self) -> list[int]:
        return sorted({sum(k) for k in self._c})

    def degree_part(self, n: int) -> "PowerVector":
        return PowerVector._from_clean({k: v for k, v in self._c.items() if sum(k) == n})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerVector):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def _combine(self, other: "PowerVector", sign: int) -> "PowerVector":
        c = dict(self._c)
        for k, v in other._c.items():
            t = c.get(k, 0) + sign * v
            if t:
                c[k] = t
            else:
                c.pop(k, None)
        return PowerVector._from_clean(c)

    def __add__(self, other: "PowerVector") -> "PowerVector":
        if not isinstance(other, PowerVector):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other: "PowerVector") -> "PowerVector":
        if not isinstance(other, PowerVector):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self) -> "PowerVector":
        return PowerVector._from_clean({k: -v for k, v in self._c.items()})

    def scale(self, k: Number) -> "PowerVector":
        k = Fraction(k)
        if not k:
            return PowerVector.zero()
        return PowerVector._from_clean({lam: k * v for lam, v in self._c.items()})

    def __mul__(self, other: Union["PowerVector", Number]) -> "PowerVector":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PowerVector):
            return NotImplemented
        c: dict[Partition, Fraction] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                key = _key(a + b)
                t = c.get(key, 0) + x * y
                if t:
                    c[key] = t
                else:
                    c.pop(key, None)
        return PowerVector._from_clean(c)

    def __rmul__(self, k: Number) -> "PowerVector":
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def __pow__(self, e: int) -> "PowerVector":
        out = PowerVector.one()
        for _ in range(e):
            out = out * self
        return out

    def d_p1(self) -> "PowerVector":
        """Formal partial derivative with respect to ``p_1``."""
        c: dict[Partition, Fraction] = {}
        for lam, v in self._c.items():
            m1 = lam.count(1)
            if m1:
                key = Partition._trusted(lam[:-1])
                c[key] = c.get(key, 0) + m1 * v
        return PowerVector._from_clean({k: v for k, v in c.items() if v})

    def substitute_scale(self, k: int) -> "PowerVector":
        """Replace every ``p_i`` by ``p_{ik}``: the plethysm ``p_k[self]``."""
        return PowerVector._from_clean(
            {Partition._trusted(tuple(k * x for x in lam)): v for lam, v in self._c.items()}
        )

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"({v})*p{format_partition(lam)}" for lam, v in self.items())


def h(n: int) -> PowerVector:
    """Complete homogeneous ``h_n = sum p_lambda / z_lambda``."""
    return PowerVector._from_clean({lam: Fraction(1, centralizer_size(lam)) for lam in partitions_of(n)})


def e(n: int) -> PowerVector:
    """Elementary ``e_n = sum sign(lambda) p_lambda / z_lambda``."""
    return PowerVector._from_clean(
        {lam: Fraction(lam.sign(), centralizer_size(lam)) for lam in partitions_of(n)}
    )


def psum(lams: Iterable[Iterable[int]]) -> PowerVector:
    """``sum p_lambda`` over the given index set (duplicates count once)."""
    return PowerVector._from_clean({_key(lam): Fraction(1) for lam in set(map(tuple, lams))})


@lru_cache(maxsize=None)
def _strip_insertion(mu: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not mu:
        return (((), 1),)
    *rest, last = mu
    acc: dict[tuple[int, ...], int] = {}
    for shape, c in _strip_insertion(tuple(rest)):
        for bigger, sign in addable_strips(shape, last):
            acc[bigger] = acc.get(bigger, 0) + sign * c
    return tuple((k, v) for k, v in acc.items() if v)


def power_product_to_schur(mu: Iterable[int]) -> SchurVector:
    """Schur expansion of ``p_mu`` by attaching border strips, largest part first."""
    mu = _key(mu)
    terms = _strip_insertion(tuple(mu))
    return SchurVector._from_clean(sum(mu), {Partition._trusted(k): v for k, v in terms})


def _homogeneous_degree(v: PowerVector) -> int:
    degs = v.degrees()
    if len(degs) > 1:
        raise DegreeMismatch(f"expected a homogeneous power vector, found degrees {degs}")
    return degs[0] if degs else 0


def power_to_schur(v: PowerVector, require_integral: bool = True) -> SchurVector:
    """``<v, s_lambda> = sum_mu v[mu] chi^lambda(mu)`` for homogeneous ``v``."""
    n = _homogeneous_degree(v)
    if not v:
        return SchurVector(n)
    if n == 0:
        val = v[()]
        if require_integral and val.denominator != 1:
            raise IntegralityError(Partition(()), val)
        return SchurVector(0, {(): int(val)})
    denom = lcm(*(x.denominator for _, x in v._c.items()))
    cols = list(v._c)
    weights = [int(v._c[mu] * denom) for mu in cols]
    if n <= WHOLE_TABLE_MAX_N:
        table = full_table(n)
        idx = [table.index(mu) for mu in cols]
        sub = table.rows[:, idx]
        bound = int(np.abs(sub).max()) * sum(abs(w) for w in weights)
        if bound < 2**62:
            raw = [int(x) for x in sub @ np.array(weights, dtype=np.int64)]
        else:
            raw = [int(x) for x in sub.astype(object) @ np.array(weights, dtype=object)]
        rows = table.classes
    else:
        rows = partitions_of(n)
        raw = [sum(w * _mn(lam, mu) for mu, w in zip(cols, weights)) for lam in rows]
    out: dict[Partition, int] = {}
    for lam, num in zip(rows, raw):
        if not num:
            continue
        q, r = divmod(num, denom)
        if r:
            if require_integral:
                raise IntegralityError(lam, Fraction(num, denom))
            raise ValueError("fractional Schur coefficients are not representable")
        out[lam] = q
    return SchurVector._from_clean(n, out)


def schur_to_power(v: SchurVector) -> PowerVector:
    """``coeff(p_mu) = sum_lambda c_lambda chi^lambda(mu) / z_mu``."""
    n = v.n
    if not v:
        return PowerVector.zero()
    if n == 0:
        return PowerVector({(): v[()]})
    out: dict[Partition, Fraction] = {}
    lams = list(v._c)
    if n <= WHOLE_TABLE_MAX_N:
        table = full_table(n)
        idx = [table.index(lam) for lam in lams]
        sub = table.rows[idx, :].astype(object)
        sums = np.array([v._c[lam] for lam in lams], dtype=object) @ sub
        for mu, s in zip(table.classes, sums):
            if s:
                out[mu] = Fraction(int(s), centralizer_size(mu))
    else:
        for mu in partitions_of(n):
            s = sum(c * _mn(lam, mu) for lam, c in v._c.items())
            if s:
                out[mu] = Fraction(s, centralizer_size(mu))
    return PowerVector._from_clean(out)


def omega(v: Union[SchurVector, PowerVector]) -> Union[SchurVector, PowerVector]:
    """The involution sending ``s_lambda`` to ``s_{lambda'}`` and ``p_n`` to ``(-1)^{n-1} p_n``."""
    if isinstance(v, SchurVector):
        return SchurVector._from_clean(v.n, {conjugate(lam): c for lam, c in v._c.items()})
    if isinstance(v, PowerVector):
        return PowerVector._from_clean({lam: lam.sign() * c for lam, c in v._c.items()})
    raise TypeError(f"omega expects a Schur or power vector, got {type(v).__name__}")


def plethysm(f: PowerVector, g: PowerVector) -> PowerVector:
    """``f[g]``, extending ``p_k[g] = g(p_i -> p_{ik})`` multiplicatively and linearly."""
    if any(len(lam) == 0 for lam in g._c):
        raise ValueError("plethysm f[g] needs g without a constant term")
    powers: dict[int, PowerVector] = {}
    out = PowerVector.zero()
    for lam, c in f._c.items():
        term = PowerVector.one()
        for k in lam:
            if k not in powers:
                powers[k] = g.substitute_scale(k)
            term = term * powers[k]
        out = out + term.scale(c)
    return out


@dataclass(frozen=True)
class Positivity:
    positive: bool
    witness: tuple[Partition, int] | None = None

    def __bool__(self) -> bool:
        return self.positive


def is_schur_positive(v: SchurVector) -> Positivity:
    """Positive iff no coefficient is negative; the witness is the revlex-least negative term."""
    negatives = [(lam, c) for lam, c in v._c.items() if c < 0]
    if not negatives:
        return Positivity(True)
    return Positivity(False, min(negatives))
