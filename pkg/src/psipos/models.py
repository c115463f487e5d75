"""Named symmetric functions built from conjugacy classes of S_n.

Everything is assembled in the power-sum basis and converted to Schur form
once, at the end. Plethystic descriptions (orbit characteristics) are kept
separate from the plain power-sum sums so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

from .characters import full_table
from .partitions import (
    Partition,
    centralizer_size,
    counting_suite,
    format_partition,
    hook,
    partitions_of,
    predicates,
)
from .symfun import (
    PowerVector,
    SchurVector,
    e,
    h,
    plethysm,
    power_to_schur,
    psum,
)


# ---------------------------------------------------------------- arithmetic


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _factorize(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    f = _factorize(n)
    if any(k > 1 for k in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------- class sets


@dataclass(frozen=True)
class ClassSubset:
    """A set of conjugacy classes of S_n, each named by its cycle type."""

    n: int
    members: frozenset[Partition]

    def __post_init__(self) -> None:
        for lam in self.members:
            if sum(lam) != self.n:
                raise ValueError(f"{format_partition(lam)} is not a class of S_{self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[Iterable[int]]) -> "ClassSubset":
        return cls(n, frozenset(Partition(m) for m in members))

    @property
    def contains_identity(self) -> bool:
        return Partition((1,) * self.n) in self.members

    def sorted(self) -> list[Partition]:
        return sorted(self.members)


def interval(mu: Iterable[int]) -> list[Partition]:
    """The revlex initial segment ``[(1^n), mu]``."""
    mu = Partition(mu)
    return [lam for lam in partitions_of(sum(mu)) if lam <= mu]


def odd_interval(mu: Iterable[int]) -> list[Partition]:
    """All-odd partitions in ``[(1^n), mu]``."""
    return [lam for lam in interval(mu) if all(p % 2 for p in lam)]


# ---------------------------------------------------------------- cycles


@lru_cache(maxsize=None)
def f_cycle(n: int) -> PowerVector:
    """Conjugacy action on the n-cycles: ``(1/n) sum_{d|n} phi(d) p_d^{n/d}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return PowerVector({(d,) * (n // d): Fraction(euler_phi(d), n) for d in divisors(n)})


@lru_cache(maxsize=None)
def lie(n: int) -> PowerVector:
    """Free Lie algebra multilinear part: ``(1/n) sum_{d|n} mu(d) p_d^{n/d}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return PowerVector(
        {(d,) * (n // d): Fraction(mobius(d), n) for d in divisors(n) if mobius(d)}
    )


@dataclass(frozen=True)
class SupportReport:
    n: int
    missing: tuple[Partition, ...]
    expected_missing: tuple[Partition, ...]

    @property
    def ok(self) -> bool:
        return set(self.missing) == set(self.expected_missing)


def f_support_check(n: int) -> SupportReport:
    """Irreducibles absent from ``f_n`` versus the odd/even characterization."""
    v = power_to_schur(f_cycle(n))
    missing = tuple(lam for lam in partitions_of(n) if v[lam] == 0)
    if n == 1:
        expected: tuple[Partition, ...] = ()
    elif n == 2:
        expected = (Partition((1, 1)),)
    elif n % 2:
        expected = (Partition((n - 1, 1)), Partition((2,) + (1,) * (n - 2)))
    else:
        expected = (Partition((n - 1, 1)), Partition((1,) * n))
    return SupportReport(n, missing, tuple(sorted(set(expected))))


@lru_cache(maxsize=None)
def class_characteristic(lam: Partition) -> PowerVector:
    """Orbit characteristic of one conjugacy class: ``prod_i h_{m_i}[f_i]``."""
    out = PowerVector.one()
    for part, mult in sorted(Partition(lam).multiplicities().items()):
        out = out * plethysm(h(mult), f_cycle(part))
    return out


@lru_cache(maxsize=None)
def twisted_class_characteristic(lam: Partition) -> PowerVector:
    """Sign-twisted orbit characteristic: ``prod_i e_{m_i}[f_i]``."""
    out = PowerVector.one()
    for part, mult in sorted(Partition(lam).multiplicities().items()):
        out = out * plethysm(e(mult), f_cycle(part))
    return out


def psi_by_plethysm(n: int) -> PowerVector:
    out = PowerVector.zero()
    for lam in partitions_of(n):
        out = out + class_characteristic(lam)
    return out


def epsilon_by_plethysm(n: int) -> PowerVector:
    out = PowerVector.zero()
    for lam in partitions_of(n):
        out = out + twisted_class_characteristic(lam)
    return out


# ---------------------------------------------------------------- interval sums


def psi_interval_power(mu: Iterable[int]) -> PowerVector:
    return psum(interval(mu))


@lru_cache(maxsize=4096)
def psi_interval(mu: Partition) -> SchurVector:
    """``psi_mu``: the sum of ``p_lambda`` over ``[(1^n), mu]``, in Schur form."""
    mu = Partition(mu)
    n = sum(mu)
    table = full_table(n)
    stop = table.index(mu) + 1
    sums = table.rows[:, :stop].sum(axis=1)
    return SchurVector(n, {lam: int(v) for lam, v in zip(table.classes, sums)})


def psi_n(n: int) -> SchurVector:
    return psi_interval(Partition((n,)))


def psi_subset(T: ClassSubset) -> SchurVector:
    return power_to_schur(psum(T.members))


def epsilon_interval(mu: Iterable[int]) -> SchurVector:
    """``epsilon_mu``: the sum of ``p_lambda`` over all-odd ``lambda`` in ``[(1^n), mu]``."""
    mu = Partition(mu)
    if not all(p % 2 for p in mu):
        raise ValueError(f"epsilon interval needs all parts odd, got {format_partition(mu)}")
    return power_to_schur(psum(odd_interval(mu)))


def epsilon_n(n: int) -> PowerVector:
    return psum(lam for lam in partitions_of(n) if all(p % 2 for p in lam))


# ---------------------------------------------------------------- hooks


def hk_power(n: int) -> PowerVector:
    return psum(hook(n, r) for r in range(n))


def hk(n: int) -> SchurVector:
    """``Hk_n``: the sum of ``p`` over hook cycle types ``(n-r, 1^r)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return power_to_schur(hk_power(n))


@dataclass(frozen=True)
class HookTriangle:
    """``a[n][r] = <Hk_n, s_{(n-r,1^r)}>`` and ``b[n][r] = <Hk_n, s_{(n-r,r)}>``."""

    a: dict[int, tuple[int, ...]]
    b: dict[int, tuple[int, ...]]

    def recurrence_ok(self) -> bool:
        for n, row in self.a.items():
            if row[0] != n or row[-1] != (1 if n % 2 else 0):
                return False
            if n >= 2 and n - 1 in self.a:
                prev = self.a[n - 1]
                for r in range(1, n - 1):
                    if row[r] != (-1) ** r + prev[r] + prev[r - 1]:
                        return False
        return True


def hook_triangle(N: int) -> HookTriangle:
    a: dict[int, tuple[int, ...]] = {}
    b: dict[int, tuple[int, ...]] = {}
    for n in range(1, N + 1):
        v = hk(n)
        a[n] = tuple(v[hook(n, r)] for r in range(n))
        b[n] = tuple(v[(n - r, r) if r else (n,)] for r in range(n // 2 + 1))
    return HookTriangle(a, b)


# ---------------------------------------------------------------- graded series


def truncate(v: PowerVector, max_deg: int) -> PowerVector:
    return PowerVector({lam: c for lam, c in v.items() if sum(lam) <= max_deg})


def _mul_trunc(a: PowerVector, b: PowerVector, max_deg: int) -> PowerVector:
    out: dict[tuple[int, ...], Fraction] = {}
    for x, cx in a.items():
        dx = sum(x)
        for y, cy in b.items():
            if dx + sum(y) <= max_deg:
                key = tuple(sorted(x + y, reverse=True))
                out[key] = out.get(key, 0) + cx * cy
    return PowerVector(out)


def plethysm_truncated(f: PowerVector, g: PowerVector, max_deg: int) -> PowerVector:
    """``f[g]`` keeping only degrees up to ``max_deg`` (``g`` without constant term)."""
    out = PowerVector.zero()
    for lam, c in f.items():
        term = PowerVector.one()
        for k in lam:
            term = _mul_trunc(term, truncate(g.substitute_scale(k), max_deg), max_deg)
        out = out + term.scale(c)
    return out


@dataclass
class IdentityReport:
    name: str
    degree: int
    ok: bool


@dataclass
class LieReport:
    N: int
    checks: list[IdentityReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def lie_identities(N: int) -> LieReport:
    """Degree-by-degree checks, up to ``N``, of three identities linking Lie, cycles and hooks.

    * ``sum_m p_m[Lie] = sum_n f_n``;
    * ``f_n`` is the degree-``n`` part of ``(1 - Lie) * sum_k Hk_k[Lie]``;
    * ``d/dp1 Hk_{n+1} = Hk_n + p_1 d/dp1 Hk_n``.
    """
    report = LieReport(N)
    lie_series = PowerVector.zero()
    for n in range(1, N + 1):
        lie_series = lie_series + lie(n)
    lhs = PowerVector.zero()
    for m in range(1, N + 1):
        lhs = lhs + truncate(lie_series.substitute_scale(m), N)
    hk_of_lie = PowerVector.zero()
    for k in range(1, N + 1):
        hk_of_lie = hk_of_lie + plethysm_truncated(hk_power(k), lie_series, N)
    product = _mul_trunc(PowerVector.one() - lie_series, hk_of_lie, N)
    for n in range(1, N + 1):
        report.checks.append(IdentityReport("plethystic sum of Lie", n, lhs.degree_part(n) == f_cycle(n)))
        report.checks.append(IdentityReport("hook series over Lie", n, product.degree_part(n) == f_cycle(n)))
        lhs3 = hk_power(n + 1).d_p1()
        rhs3 = hk_power(n) + PowerVector.p(1) * hk_power(n).d_p1()
        report.checks.append(IdentityReport("hook restriction", n, lhs3 == rhs3))
    return report


# ---------------------------------------------------------------- ones and twos


def p_ones_twos_power(n: int) -> PowerVector:
    return psum(lam for lam in partitions_of(n) if all(p in (1, 2) for p in lam))


def _h2() -> PowerVector:
    return h(2)


def _e2() -> PowerVector:
    return e(2)


def p_ones_twos_closed(n: int) -> PowerVector:
    """``p_{2m,T} = sum_{j odd} C(m+1, j) h_2^{m+1-j} e_2^{j-1}``; odd ``n`` adds a factor ``p_1``."""
    m, odd = divmod(n, 2)
    out = PowerVector.zero()
    for j in range(1, m + 2, 2):
        out = out + (_h2() ** (m + 1 - j) * _e2() ** (j - 1)).scale(comb(m + 1, j))
    return PowerVector.p(1) * out if odd else out


def p_ones_twos(n: int, method: str = "direct") -> SchurVector:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "direct":
        return power_to_schur(p_ones_twos_power(n))
    if method == "closed":
        return power_to_schur(p_ones_twos_closed(n))
    raise ValueError(f"unknown method {method!r}")


def v_poly(m: int) -> PowerVector:
    """``V_{2m-2} = sum_{j odd, j <= m} C(m+1, j) h_2^{m-j} e_2^{j-1}``."""
    if m < 1:
        raise ValueError("m must be positive")
    out = PowerVector.zero()
    for j in range(1, m + 1, 2):
        out = out + (_h2() ** (m - j) * _e2() ** (j - 1)).scale(comb(m + 1, j))
    return out


# ---------------------------------------------------------------- multiplicities


@dataclass
class Check:
    name: str
    expected: int
    actual: int

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class MultiplicityReport:
    n: int
    checks: list[Check] = field(default_factory=list)
    uniform_bound: int | None = None
    uniform_min: int | None = None
    doubled_part_reading: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        uniform = self.uniform_bound is None or (self.uniform_min or 0) >= self.uniform_bound
        return uniform and all(c.ok for c in self.checks)


def _odd_distinct_except_doubled(lam: Partition, doubled_must_be_odd: bool) -> bool:
    mult = lam.multiplicities()
    doubled = [p for p, m in mult.items() if m == 2]
    if len(doubled) != 1 or any(m > 2 for m in mult.values()):
        return False
    if doubled_must_be_odd and doubled[0] % 2 == 0:
        return False
    return all(p % 2 for p, m in mult.items() if m == 1)


def _odd_distinct_except_one_even(lam: Partition) -> bool:
    mult = lam.multiplicities()
    evens = [p for p in lam if p % 2 == 0]
    return len(evens) == 1 and all(m == 1 for m in mult.values())


def sign_transposition_count(n: int, doubled_must_be_odd: bool = True) -> int:
    """``sum_{T1} (l - 1) + |T2 u T3|`` for the given reading of the doubled part."""
    t1 = sum(len(lam) - 1 for lam in partitions_of(n) if predicates(lam).odd_distinct)
    t23 = sum(
        1
        for lam in partitions_of(n)
        if _odd_distinct_except_doubled(lam, doubled_must_be_odd) or _odd_distinct_except_one_even(lam)
    )
    return t1 + t23


# the uniform lower bound on psi_n multiplicities fails at n = 5: (2,1^3) occurs 3 times
LOWER_BOUND_MIN_N = 6


def multiplicity_suite(n: int) -> MultiplicityReport:
    """Multiplicity facts for ``psi_n`` and the sign row along the revlex chain."""
    if n < 3:
        raise ValueError("multiplicity suite needs n >= 3")
    counts = counting_suite(n)
    psi = psi_n(n)
    rep = MultiplicityReport(n)
    one_n = Partition((1,) * n)
    rep.checks.append(Check("trivial in psi_n", counts.p, psi[(n,)]))
    rep.checks.append(Check("sign in psi_n", counts.self_conjugate, psi[one_n]))
    rep.checks.append(Check("(n-1,1) in psi_n", counts.distinct_parts_total - counts.p, psi[(n - 1, 1)]))
    strict = sign_transposition_count(n, True)
    loose = sign_transposition_count(n, False)
    actual = psi[hook(n, n - 2)]
    rep.doubled_part_reading = {"odd doubled part": strict, "any doubled part": loose, "psi_n": actual}
    rep.checks.append(Check("(2,1^{n-2}) in psi_n", strict, actual))

    if n >= LOWER_BOUND_MIN_N:
        do = counts.do
        rep.uniform_bound = (4 if n % 2 else 3) + do
        rep.uniform_min = min(v for lam, v in psi.items() if lam != one_n)

    sign_at = _sign_sums(n)

    def at(*parts: int) -> int:
        return sign_at[Partition(parts)]

    top = psi[one_n]
    if n >= 4:
        rep.checks.append(Check("sign at (n-2,2)", top, at(n - 2, 2)))
    rep.checks.append(Check("sign at (n-1,1)", top + (-1) ** n, at(n - 1, 1)))
    if n >= 4:
        rep.checks.append(Check("sign at (n-2,1^2)", top - (-1) ** n, at(n - 2, 1, 1)))
    if n >= 6:
        rep.checks.append(Check("sign at (n-3,3)", top, at(n - 3, 3)))
    for k in range(1, n // 2 + 1):
        here = at(*((2,) * k + (1,) * (n - 2 * k)))
        below = at(*((2,) * (k - 1) + (1,) * (n - 2 * k + 2)))
        rep.checks.append(Check(f"sign step at (2^{k},1^{n - 2 * k})", (-1) ** k + below, here))
    k = n // 2
    rep.checks.append(
        Check("sign at (3,1^{n-3})", 1 + at(*((2,) * k + (1,) * (n - 2 * k))), at(3, *(1,) * (n - 3)))
    )
    return rep


def _sign_sums(n: int) -> dict[Partition, int]:
    out, acc = {}, 0
    for lam in partitions_of(n):
        acc += lam.sign()
        out[lam] = acc
    return out

