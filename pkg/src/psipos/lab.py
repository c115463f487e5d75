"""Positivity verification harness.

Each claim expands into independent instances. An instance evaluates one or
more Schur expansions and checks their signs. Instances run on a worker pool
and are aggregated in a fixed order, so the report does not depend on how
many workers ran it.

Claim kinds:

* ``theorem``: a failing instance is a hard error for callers;
* ``conjecture``: a failing instance is reported and flagged;
* ``control``: the instance passes when the expected non-positivity shows up.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .characters import CapacityError, class_columns, full_table
from .closed_forms import section3_identities
from .models import epsilon_interval, psi_interval, psi_interval_power
from .partitions import Partition, dominance_leq, format_partition, hook, partitions_of
from .symfun import PowerVector, SchurVector, h, is_schur_positive, omega, power_to_schur, psum

Witness = dict
Outcome = tuple[bool, Witness | None]

# Degrees up to this bound are checked through SchurVector expansions. Above
# it the interval claims switch to prefix sums over the needed columns only.
VECTOR_MODE_MAX_N = 12


# ---------------------------------------------------------------- claims


@dataclass(frozen=True)
class ClaimSpec:
    kind: str
    ranges: dict[str, tuple[int, int]]
    title: str


CLAIMS: dict[str, ClaimSpec] = {
    "interval-positivity": ClaimSpec("conjecture", {"n": (1, 14)}, "every revlex initial interval sum is Schur-positive"),
    "twos-minus-h2-squared": ClaimSpec("conjecture", {"k": (2, 10)}, "psi_(2^k) - 2 h_2^2 p_1^(2k-4) is Schur-positive"),
    "twos-step": ClaimSpec("conjecture", {"k": (1, 5), "m": (1, 5)}, "psi_(2^(k+m)) - h_2^r p_1^(2m-2r) psi_(2^k) is Schur-positive"),
    "odd-intervals": ClaimSpec("conjecture", {"n": (1, 18)}, "all-odd interval sums epsilon_mu are Schur-positive"),
    "even-signature-intervals": ClaimSpec("conjecture", {"n": (1, 14)}, "interval sums over even n - length(lambda) are Schur-positive"),
    "lower-intervals": ClaimSpec("theorem", {"n": (3, 14)}, "psi_mu is Schur-positive for mu <= (3,1^(n-3))"),
    "upper-intervals": ClaimSpec("theorem", {"n": (6, 14)}, "psi_mu is Schur-positive for mu >= (n-4,1^4)"),
    "three-twos-ones-intervals": ClaimSpec("theorem", {"n": (5, 14)}, "psi_(3,2^k,1^r) is Schur-positive for r = 0, 1, 2"),
    "threes-ones-odd-intervals": ClaimSpec("theorem", {"n": (3, 14)}, "epsilon_(3^r,1^(n-3r)) is Schur-positive"),
    "top-odd-intervals-odd-n": ClaimSpec("theorem", {"n": (7, 15)}, "odd n: top all-odd interval sums are Schur-positive"),
    "top-odd-intervals-even-n": ClaimSpec("theorem", {"n": (6, 14)}, "even n: top all-odd interval sums are Schur-positive"),
    "even-signature-total": ClaimSpec("theorem", {"n": (1, 14)}, "sum over even n - length(lambda) equals (psi_n + omega psi_n)/2 and is Schur-positive"),
    "hook-classes": ClaimSpec("theorem", {"n": (1, 14)}, "hook class sum Hk_n is Schur-positive with the stated support"),
    "families": ClaimSpec("theorem", {"n": (1, 12)}, "known Schur-positive class families"),
    "dominance-ideals": ClaimSpec("control", {"n": (6, 11)}, "dominance ideals can fail positivity"),
    "known-negatives": ClaimSpec("control", {"n": (4, 10)}, "expressions known not to be Schur-positive"),
}

FAMILY_ITEMS = tuple(range(1, 16))

_CLAIM_RE = re.compile(r"^\s*([a-z0-9-]+?)\s*(?:\.(\d+)|\(\s*(\d+)\s*\))?\s*$")


@dataclass(frozen=True)
class ClaimId:
    """A claim tag with its inclusive parameter ranges."""

    tag: str
    item: int | None = None
    ranges: tuple[tuple[str, int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.tag not in CLAIMS:
            raise ValueError(f"unknown claim {self.tag!r}; known: {', '.join(CLAIMS)}")
        if self.tag == "families":
            if self.item not in FAMILY_ITEMS:
                raise ValueError("families needs an item between 1 and 15")
        elif self.item is not None:
            raise ValueError(f"{self.tag} takes no item number")
        spec = CLAIMS[self.tag]
        for name, lo, hi in self.ranges:
            if name not in spec.ranges:
                raise ValueError(f"{self.tag} has no {name!r} range")
            if lo > hi:
                raise ValueError(f"empty {name} range {lo}..{hi} for {self.tag}")

    @classmethod
    def parse(cls, text: str, **overrides: tuple[int, int] | int) -> "ClaimId":
        """Parse ``interval-positivity`` or ``families.8`` (also ``families(8)``).

        Keyword overrides set a range: ``n=(6, 10)`` or ``max_n=10``.
        """
        m = _CLAIM_RE.match(text.lower())
        if not m:
            raise ValueError(f"cannot parse claim {text!r}")
        tag = m.group(1)
        item = m.group(2) or m.group(3)
        spec = CLAIMS.get(tag)
        if spec is None:
            raise ValueError(f"unknown claim {tag!r}; known: {', '.join(CLAIMS)}")
        ranges = dict(spec.ranges)
        for key, val in overrides.items():
            if val is None:
                continue
            if key.startswith("max_"):
                name = key[4:]
                if name in ranges:
                    ranges[name] = (ranges[name][0], int(val))
            elif key in ranges:
                lo, hi = val  # type: ignore[misc]
                ranges[key] = (int(lo), int(hi))
        return cls(tag, int(item) if item else None, tuple((k, lo, hi) for k, (lo, hi) in ranges.items()))

    @property
    def kind(self) -> str:
        return CLAIMS[self.tag].kind

    def range(self, name: str) -> range:
        for key, lo, hi in self.ranges:
            if key == name:
                return range(lo, hi + 1)
        lo, hi = CLAIMS[self.tag].ranges[name]
        return range(lo, hi + 1)

    def __str__(self) -> str:
        return f"families.{self.item}" if self.tag == "families" else self.tag


# ---------------------------------------------------------------- verdicts


@dataclass
class Verdict:
    claim: str
    instance: str
    status: str
    witness: Witness | None
    millis: float

    def to_json_obj(self) -> dict:
        obj = {"claim": self.claim, "instance": self.instance, "status": self.status}
        if self.witness is not None:
            obj["witness"] = self.witness
        obj["millis"] = round(self.millis, 3)
        return obj


@dataclass
class VerdictReport:
    claim: str
    kind: str
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status != "pass"]

    @property
    def ok(self) -> bool:
        return bool(self.verdicts) and not self.failures

    @property
    def hard_failure(self) -> bool:
        """Theorems and controls must hold; conjecture failures are only flagged."""
        if self.kind == "conjecture":
            return any(v.status == "error" for v in self.verdicts)
        return not self.ok

    def to_json_obj(self) -> dict:
        return {
            "claim": self.claim,
            "kind": self.kind,
            "ok": self.ok,
            "verdicts": [v.to_json_obj() for v in self.verdicts],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


# ---------------------------------------------------------------- primitives


def _neg_witness(v: SchurVector, **context: object) -> Witness | None:
    pos = is_schur_positive(v)
    if pos:
        return None
    lam, c = pos.witness
    return {**{k: str(x) for k, x in context.items()}, "lambda": format_partition(lam), "coefficient": int(c)}


def _positive(v: SchurVector, **context: object) -> Outcome:
    w = _neg_witness(v, **context)
    return w is None, w


def _all_odd(lam: Sequence[int]) -> bool:
    return all(p % 2 for p in lam)


def _even_signature(lam: Sequence[int]) -> bool:
    return (sum(lam) - len(lam)) % 2 == 0


RESTRICTIONS: dict[str, Callable[[Sequence[int]], bool]] = {
    "all": lambda lam: True,
    "odd": _all_odd,
    "even": _even_signature,
}


def restricted_interval(mu: Iterable[int], restriction: str) -> SchurVector:
    """Sum of ``p_lambda`` over restricted ``lambda`` in ``[(1^n), mu]``."""
    mu = Partition(mu)
    if restriction == "all":
        return psi_interval(mu)
    if restriction == "odd":
        return epsilon_interval(mu)
    keep = RESTRICTIONS[restriction]
    return power_to_schur(psum(lam for lam in partitions_of(sum(mu)) if lam <= mu and keep(lam)))


def interval_prefix_sums(n: int, restriction: str = "all") -> tuple[list[Partition], np.ndarray]:
    """Restricted classes of S_n and the per-row running sums over them.

    Column ``j`` holds the Schur coefficients of the restricted interval sum
    ending at class ``j``. Only the restricted columns are evaluated.
    """
    keep = RESTRICTIONS[restriction]
    classes = [lam for lam in partitions_of(n) if keep(lam)]
    if restriction == "all":
        cols = full_table(n).rows
    else:
        cols = class_columns(n, classes)
    return classes, np.cumsum(cols, axis=1)


def _check_intervals(n: int, restriction: str, mus: Sequence[Partition] | None, mode: str) -> Outcome:
    """Check restricted interval sums ending at each of ``mus`` (default: all)."""
    keep = RESTRICTIONS[restriction]
    if mode == "auto":
        mode = "vector" if n <= VECTOR_MODE_MAX_N else "rows"
    if mus is None:
        mus = [lam for lam in partitions_of(n) if keep(lam)]
    if mode == "vector":
        for mu in mus:
            w = _neg_witness(restricted_interval(mu, restriction), mu=format_partition(mu))
            if w is not None:
                return False, w
        return True, None
    classes, sums = interval_prefix_sums(n, restriction)
    position = {lam: j for j, lam in enumerate(classes)}
    rows = partitions_of(n)
    for mu in mus:
        col = sums[:, position[Partition(mu)]]
        neg = np.nonzero(col < 0)[0]
        if len(neg):
            i = int(neg[0])
            return False, {"mu": format_partition(mu), "lambda": format_partition(rows[i]), "coefficient": int(col[i])}
    return True, None


def _p1(k: int) -> PowerVector:
    return PowerVector.p(*([1] * k)) if k else PowerVector.one()


def _psi_twos(k: int) -> PowerVector:
    return psi_interval_power((2,) * k) if k else PowerVector.one()


def subset_sum(n: int, members: Iterable[Iterable[int]]) -> np.ndarray:
    """Schur coefficients (rows in revlex) of the class sum over ``members``."""
    table = full_table(n)
    mask = np.zeros(len(table.classes), dtype=bool)
    for lam in members:
        mask[table.index(Partition(lam))] = True
    return table.rows[:, mask].sum(axis=1)


def _check_subset(n: int, members: list[Partition], **context: object) -> Outcome:
    sums = subset_sum(n, members)
    neg = np.nonzero(sums < 0)[0]
    if len(neg):
        i = int(neg[0])
        lam = partitions_of(n)[i]
        return False, {**{k: str(x) for k, x in context.items()}, "lambda": format_partition(lam), "coefficient": int(sums[i])}
    return True, None


# ---------------------------------------------------------------- instance checks


def check_conj1(n: int, mode: str = "auto") -> Outcome:
    return _check_intervals(n, "all", None, mode)


def check_conj2(k: int) -> Outcome:
    v = _psi_twos(k) - (h(2) * h(2) * _p1(2 * k - 4)).scale(2)
    return _positive(power_to_schur(v))


def check_conj3(k: int, m: int) -> Outcome:
    base = _psi_twos(k)
    for r in range(1, m + 1):
        v = power_to_schur(_psi_twos(k + m) - h(2) ** r * _p1(2 * m - 2 * r) * base)
        w = _neg_witness(v, r=r)
        if w is not None:
            return False, w
    return True, None


def check_conj4(n: int, mode: str = "auto") -> Outcome:
    return _check_intervals(n, "odd", None, mode)


def check_conj5(n: int, mode: str = "auto") -> Outcome:
    # The interval end ranges over every class; the summands are restricted.
    if mode == "auto":
        mode = "vector" if n <= VECTOR_MODE_MAX_N else "rows"
    if mode == "vector":
        for mu in partitions_of(n):
            w = _neg_witness(restricted_interval(mu, "even"), mu=format_partition(mu))
            if w is not None:
                return False, w
        return True, None
    classes, sums = interval_prefix_sums(n, "even")
    rows = partitions_of(n)
    for j, mu in enumerate(classes):
        neg = np.nonzero(sums[:, j] < 0)[0]
        if len(neg):
            i = int(neg[0])
            return False, {"mu": format_partition(mu), "lambda": format_partition(rows[i]), "coefficient": int(sums[i, j])}
    return True, None


def lower_interval_ends(n: int) -> list[Partition]:
    """Interval ends covered by the lower theorem: ``mu <= (3, 1^(n-3))``."""
    top = Partition((3,) + (1,) * (n - 3)) if n >= 3 else Partition((n,))
    return [lam for lam in partitions_of(n) if lam <= top]


def upper_interval_ends(n: int) -> list[Partition]:
    """Interval ends covered by the upper theorem: ``mu >= (n-4, 1^4)``."""
    bottom = Partition((n - 4, 1, 1, 1, 1)) if n >= 5 else Partition((1,) * n)
    return [lam for lam in partitions_of(n) if lam >= bottom]


def check_lower_intervals(n: int) -> Outcome:
    return _check_intervals(n, "all", lower_interval_ends(n), "auto")


def check_upper_intervals(n: int) -> Outcome:
    return _check_intervals(n, "all", upper_interval_ends(n), "auto")


def three_twos_ones_ends(n: int) -> list[Partition]:
    out = []
    for r in (0, 1, 2):
        if (n - 3 - r) >= 2 and (n - 3 - r) % 2 == 0:
            out.append(Partition((3,) + (2,) * ((n - 3 - r) // 2) + (1,) * r))
    return out


def check_three_twos_ones(n: int) -> Outcome:
    return _check_intervals(n, "all", three_twos_ones_ends(n), "auto")


def check_threes_ones(n: int) -> Outcome:
    ends = [Partition((3,) * r + (1,) * (n - 3 * r)) for r in range(1, n // 3 + 1)]
    return _check_intervals(n, "odd", ends, "auto")


def top_odd_ends(n: int) -> list[Partition]:
    """The all-odd interval ends near the top: odd ``n`` and even ``n`` cases."""
    if n % 2:
        return [Partition((n - 2, 1, 1)), Partition((n - 4, 3, 1)), Partition((n - 4, 1, 1, 1, 1))]
    return [Partition((n - 3, 3)), Partition((n - 3, 1, 1, 1))]


def check_top_odd(n: int) -> Outcome:
    return _check_intervals(n, "odd", top_odd_ends(n), "auto")


def check_even_signature_total(n: int) -> Outcome:
    total = psi_interval(Partition((n,)))
    even = power_to_schur(psum(lam for lam in partitions_of(n) if _even_signature(lam)))
    doubled = total + omega(total)
    if doubled != even * 2:
        diff = doubled - even * 2
        lam, c = next(iter(diff.items()))
        return False, {"identity": "mismatch", "lambda": format_partition(lam), "coefficient": int(c)}
    return _positive(even)


def check_hooks(n: int) -> Outcome:
    v = power_to_schur(psum(hook(n, r) for r in range(n)))
    ok, w = _positive(v)
    if not ok:
        return ok, w
    sign = Partition((1,) * n)
    for lam in partitions_of(n):
        expected = not (n % 2 == 0 and n > 1 and lam == sign)
        if (v[lam] > 0) != expected:
            return False, {"support": "unexpected", "lambda": format_partition(lam), "coefficient": int(v[lam])}
    return True, None


# ---------------------------------------------------------------- families


def _primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if all(q % d for d in range(2, int(q**0.5) + 1))]


def _prime_support(k: int) -> set[int]:
    out, d = set(), 2
    while d * d <= k:
        while k % d == 0:
            out.add(d)
            k //= d
        d += 1
    if k > 1:
        out.add(k)
    return out


def _is_power_of(k: int, q: int) -> bool:
    while k % q == 0:
        k //= q
    return k == 1


def _odd_distinct(lam: Sequence[int]) -> bool:
    return _all_odd(lam) and len(set(lam)) == len(lam)


def family_members(item: int, n: int) -> list[tuple[str, list[Partition]]]:
    """All parameter choices of a family item at degree ``n``, as class lists."""
    parts = partitions_of(n)

    def sel(pred: Callable[[Partition], bool]) -> list[Partition]:
        return [lam for lam in parts if pred(lam)]

    if item == 1:
        return [("", list(parts))]
    if item == 2:
        return [("", sel(_all_odd))]
    if item == 3:
        return [(f"k={k}", sel(lambda lam, k=k: lam.count(1) >= k)) for k in range(1, n + 1)]
    if item == 4:
        return [(f"k={k}", sel(lambda lam, k=k: _all_odd(lam) and lam.count(1) >= k)) for k in range(1, n + 1)]
    if item == 5:
        return [("", sel(_even_signature))]
    if item == 6:
        return [("", sel(lambda lam: _even_signature(lam) and not _odd_distinct(lam)))]
    if item == 7:
        return [("", sel(lambda lam: not _odd_distinct(lam)))] if n >= 2 else []
    if item == 8:
        return [(f"k={k}", sel(lambda lam, k=k: all(p in (1, k) for p in lam))) for k in range(2, n + 1)]
    if item == 9:
        return [(f"k={k}", sel(lambda lam, k=k: all(k % p == 0 for p in lam))) for k in range(2, n + 1)]
    if item == 10:
        out = []
        primes = _primes_upto(n)
        for size in range(1, len(primes) + 1):
            for S in combinations(primes, size):
                allowed = set(S)
                out.append(
                    (
                        "S={" + ",".join(map(str, S)) + "}",
                        sel(lambda lam, a=allowed: all(_prime_support(p) <= a for p in lam) and sum(p % 2 == 0 for p in lam) % 2 == 0),
                    )
                )
        out.append(("powers of 2, even n-length", sel(lambda lam: all(_is_power_of(p, 2) for p in lam) and _even_signature(lam))))
        for q in primes:
            out.append((f"powers of {q}", sel(lambda lam, q=q: all(_is_power_of(p, q) for p in lam))))
            out.append((f"coprime to {q}", sel(lambda lam, q=q: all(p % q for p in lam))))
        if not primes:
            out.append(("", list(parts)))
        return out
    if item == 11:
        return [(f"mu={format_partition(mu)}", [lam for lam in parts if lam <= mu]) for mu in lower_interval_ends(n)]
    if item == 12:
        return [(f"mu={format_partition(mu)}", [lam for lam in parts if lam <= mu]) for mu in upper_interval_ends(n)]
    if item == 13:
        return [("", [hook(n, r) for r in range(n)])]
    if item == 14:
        return [(f"mu={format_partition(mu)}", [lam for lam in parts if lam <= mu]) for mu in three_twos_ones_ends(n)]
    if item == 15:
        ident = Partition((1,) * n)
        return [(f"mu={format_partition(mu)}", sorted({ident, mu})) for mu in parts]
    raise ValueError(f"no family item {item}")


def check_family(item: int, n: int) -> Outcome:
    for label, members in family_members(item, n):
        ok, w = _check_subset(n, members, parameter=label)
        if not ok:
            return ok, w
    return True, None


# ---------------------------------------------------------------- controls


def dominance_ideal(mu: Iterable[int]) -> list[Partition]:
    """Classes weakly dominated by ``mu``."""
    mu = Partition(mu)
    return [lam for lam in partitions_of(sum(mu)) if dominance_leq(lam, mu)]


def dominance_failures(n: int) -> list[tuple[Partition, dict[Partition, int]]]:
    """Principal dominance ideals of S_n whose class sum is not Schur-positive."""
    out = []
    rows = partitions_of(n)
    for mu in rows:
        sums = subset_sum(n, dominance_ideal(mu))
        neg = {rows[i]: int(sums[i]) for i in np.nonzero(sums < 0)[0]}
        if neg:
            out.append((mu, neg))
    return out


def check_dominance(n: int) -> Outcome:
    """At ``n = 6`` the single failing ideal sits below (4,1^2); above, the
    ideal below (4,1^(n-4)) is negative only at the sign, with -1."""
    sign = Partition((1,) * n)
    if n == 6:
        fails = dominance_failures(6)
        seen = {
            "failing_ideals": [format_partition(mu) for mu, _ in fails],
            "negatives": [{format_partition(l): c for l, c in neg.items()} for _, neg in fails],
        }
        return (len(fails) == 1 and fails[0][0] == Partition((4, 1, 1)) and fails[0][1] == {sign: -1}), seen
    sums = subset_sum(n, dominance_ideal((4,) + (1,) * (n - 4)))
    rows = partitions_of(n)
    neg = {rows[i]: int(sums[i]) for i in np.nonzero(sums < 0)[0]}
    seen = {"negatives": {format_partition(l): c for l, c in neg.items()}}
    return neg == {sign: -1}, seen


def odd_signature_with_identity(mu: Iterable[int]) -> SchurVector:
    """``p_1^n`` plus the interval sum over classes with ``n - length`` odd."""
    mu = Partition(mu)
    n = sum(mu)
    return power_to_schur(PowerVector.p(*([1] * n)) + psum(lam for lam in partitions_of(n) if lam <= mu and not _even_signature(lam)))


def check_odd_signature_control(n: int) -> Outcome:
    """Some interval end makes the odd-signature sum with the identity fail."""
    for mu in partitions_of(n):
        w = _neg_witness(odd_signature_with_identity(mu), mu=format_partition(mu))
        if w is not None:
            return True, w
    return False, None


def check_twos_controls() -> Outcome:
    """Both scaled-down differences of ``psi_(2^k)`` terms are not Schur-positive."""
    found = {}
    for c in section3_identities(max_m=1, max_k=1, max_r=0):
        if c.name.endswith("not positive") and "g6" not in c.name:
            if not c.ok:
                return False, {"name": c.name, "instance": c.instance}
            found[f"{c.name} [{c.instance}]"] = {"lambda": c.witness[0], "coefficient": c.witness[1]}
    return True, found


# ---------------------------------------------------------------- expansion


def instances(claim: ClaimId, mode: str = "auto") -> list[tuple[str, Callable[[], Outcome]]]:
    """Independent jobs of a claim, in report order."""
    tag = claim.tag
    ns = claim.range("n") if "n" in CLAIMS[tag].ranges else range(0)
    jobs: list[tuple[str, Callable[[], Outcome]]] = []
    if tag == "interval-positivity":
        jobs = [(f"n={n}", partial(check_conj1, n, mode)) for n in ns]
    elif tag == "twos-minus-h2-squared":
        jobs = [(f"k={k}", partial(check_conj2, k)) for k in claim.range("k")]
    elif tag == "twos-step":
        jobs = [(f"k={k},m={m}", partial(check_conj3, k, m)) for k in claim.range("k") for m in claim.range("m")]
    elif tag == "odd-intervals":
        jobs = [(f"n={n}", partial(check_conj4, n, mode)) for n in ns]
    elif tag == "even-signature-intervals":
        jobs = [(f"n={n}", partial(check_conj5, n, mode)) for n in ns]
    elif tag == "lower-intervals":
        jobs = [(f"n={n}", partial(check_lower_intervals, n)) for n in ns if n >= 1]
    elif tag == "upper-intervals":
        jobs = [(f"n={n}", partial(check_upper_intervals, n)) for n in ns if n >= 1]
    elif tag == "three-twos-ones-intervals":
        jobs = [(f"n={n}", partial(check_three_twos_ones, n)) for n in ns if three_twos_ones_ends(n)]
    elif tag == "threes-ones-odd-intervals":
        jobs = [(f"n={n}", partial(check_threes_ones, n)) for n in ns if n >= 3]
    elif tag == "top-odd-intervals-odd-n":
        jobs = [(f"n={n}", partial(check_top_odd, n)) for n in ns if n % 2 and n >= 7]
    elif tag == "top-odd-intervals-even-n":
        jobs = [(f"n={n}", partial(check_top_odd, n)) for n in ns if n % 2 == 0 and n >= 6]
    elif tag == "even-signature-total":
        jobs = [(f"n={n}", partial(check_even_signature_total, n)) for n in ns if n >= 1]
    elif tag == "hook-classes":
        jobs = [(f"n={n}", partial(check_hooks, n)) for n in ns if n >= 1]
    elif tag == "families":
        jobs = [(f"n={n}", partial(check_family, claim.item, n)) for n in ns if n >= 1 and family_members(claim.item, n)]
    elif tag == "dominance-ideals":
        jobs = [(f"n={n}", partial(check_dominance, n)) for n in ns if n >= 6]
    elif tag == "known-negatives":
        jobs = [(f"odd-signature n={n}", partial(check_odd_signature_control, n)) for n in ns if n >= 4]
        jobs.append(("scaled psi_(2^k) differences", check_twos_controls))
    if not jobs:
        raise ValueError(f"{claim} has no instances in the requested range")
    return jobs


def _run_job(claim: str, kind: str, label: str, job: Callable[[], Outcome]) -> Verdict:
    start = time.perf_counter()
    try:
        ok, witness = job()
        status = "pass" if ok else "fail"
    except (CapacityError, MemoryError) as exc:
        status, witness = "error", {"error": f"{type(exc).__name__}: {exc}"}
    millis = (time.perf_counter() - start) * 1000
    # Controls always carry what they observed; positive claims only on failure.
    if kind != "control" and status == "pass":
        witness = None
    return Verdict(claim, label, status, witness, millis)


def verify(claim: ClaimId | str, workers: int = 1, mode: str = "auto") -> VerdictReport:
    """Run every instance of ``claim`` and collect verdicts in instance order."""
    if isinstance(claim, str):
        claim = ClaimId.parse(claim)
    jobs = instances(claim, mode)
    name, kind = str(claim), claim.kind
    if workers <= 1 or len(jobs) == 1:
        verdicts = [_run_job(name, kind, label, job) for label, job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            futures = [pool.submit(_run_job, name, kind, label, job) for label, job in jobs]
            verdicts = [f.result() for f in futures]
    return VerdictReport(name, kind, verdicts)


def all_claims(**overrides: tuple[int, int] | int) -> list[ClaimId]:
    out = []
    for tag in CLAIMS:
        if tag == "families":
            out.extend(ClaimId.parse(f"families.{i}", **overrides) for i in FAMILY_ITEMS)
        else:
            out.append(ClaimId.parse(tag, **overrides))
    return out


# ---------------------------------------------------------------- probes


@dataclass
class BoundaryProbe:
    n: int
    expansion: SchurVector
    expected: dict[Partition, int]

    @property
    def observed(self) -> dict[Partition, int]:
        return {lam: self.expansion[lam] for lam in self.expected}

    @property
    def ok(self) -> bool:
        return self.observed == self.expected

    def negatives(self) -> dict[Partition, int]:
        return {lam: c for lam, c in self.expansion.items() if c < 0}


def boundary_probe(n: int) -> BoundaryProbe:
    """The class sum over ``lambda >= (n-4,1^4)``, just above the proven range."""
    if n not in (8, 9, 10):
        raise ValueError("boundary_probe is defined for n in {8, 9, 10}")
    bottom = Partition((n - 4, 1, 1, 1, 1))
    v = power_to_schur(psum(lam for lam in partitions_of(n) if lam >= bottom))
    expected = {Partition((n - 3, 3)): -6}
    if n in (9, 10):
        expected[Partition((n - 4, 4))] = -5
    else:
        expected[Partition((n - 4, 3, 1))] = -5
    return BoundaryProbe(n, v, expected)


@dataclass
class Run:
    direction: str
    start: int
    values: list[int]
    classes: list[Partition]


@dataclass
class SignRuns:
    n: int
    classes: list[Partition]
    sums: list[int]
    runs: list[Run]

    def find(self, values: Sequence[int]) -> Run | None:
        """The first run containing ``values`` as consecutive entries."""
        values = list(values)
        for run in self.runs:
            for i in range(len(run.values) - len(values) + 1):
                if run.values[i : i + len(values)] == values:
                    return Run(run.direction, run.start + i, values, run.classes[i : i + len(values)])
        return None


def sign_runs(n: int) -> SignRuns:
    """Running sums of the sign row over classes in revlex, split into runs.

    A run is a maximal stretch of strictly increasing (or strictly
    decreasing) consecutive values.
    """
    if n < 2:
        raise ValueError("sign_runs needs n >= 2")
    table = full_table(n)
    sums = [int(x) for x in table.row_partial_sums(Partition((1,) * n))]
    classes = list(table.classes)
    runs: list[Run] = []
    i = 0
    while i < len(sums) - 1:
        step = sums[i + 1] - sums[i]
        if step == 0:
            i += 1
            continue
        j = i + 1
        while j + 1 < len(sums) and (sums[j + 1] - sums[j]) * step > 0:
            j += 1
        runs.append(Run("increasing" if step > 0 else "decreasing", i, sums[i : j + 1], classes[i : j + 1]))
        i = j
    return SignRuns(n, classes, sums, runs)
