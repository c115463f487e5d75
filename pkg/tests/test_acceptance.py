"""Acceptance criteria 1-8, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py`` (lines go to stdout).

Set ``PSIPOS_ACCEPTANCE_LONG=1`` to include the long-running optional parts
(g(n) for 19 <= n <= 25 and odd intervals up to n = 28).
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import pytest

HERE = Path(__file__).parent
if str(HERE) not in sys.path:  # direct script use
    sys.path.insert(0, str(HERE))

from golden import (  # noqa: E402
    F_REFERENCE,
    G_REFERENCE,
    LB_REFERENCE,
    SIGN_PARTIAL_SUMS,
    STANDARD_CONJUGATE_ROW,
)

TABLES = HERE / "fixtures" / "tables"
LONG = os.environ.get("PSIPOS_ACCEPTANCE_LONG", "") not in ("", "0")


@dataclass
class Outcome:
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self, number: int) -> str:
        return f"criterion {number}: {'PASS' if self.ok else 'FAIL'} ({self.seconds:.1f}s) {self.detail}"


RESULTS: dict[int, Outcome] = {}


def _clear_caches() -> None:
    from psipos import characters, models, partitions, symfun

    for fn in (
        characters.removable_strips,
        characters.addable_strips,
        characters._mn,
        characters._table_rows,
        characters.full_table,
        symfun._strip_insertion,
        models.psi_interval,
        partitions._partitions_desc,
        partitions.partitions_of,
        partitions.partition_index,
    ):
        fn.cache_clear()


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


# ---------------------------------------------------------------- criteria


def criterion_1() -> Outcome:
    from psipos import fixtures
    from psipos.models import psi_interval
    from psipos.partitions import partitions_of

    _clear_caches()
    start = time.perf_counter()
    small = fixtures.parse_psi_blocks((TABLES / "psi_small.txt").read_text())
    six = fixtures.parse_psi_blocks((TABLES / "psi_six.txt").read_text())
    wrong = [mu for mu, v in {**small, **six}.items() if psi_interval(mu) != v]
    covered = set(small) | set(six) == {tuple(mu) for n in range(1, 7) for mu in partitions_of(n)}
    secs = time.perf_counter() - start
    ok = not wrong and covered and len(six) == 11 and secs < 1.0
    return Outcome(ok, f"{len(small)} expansions with |mu| <= 5 and {len(six)} for n = 6; mismatches {wrong}", secs)


def criterion_2() -> Outcome:
    from psipos.characters import full_table
    from psipos.partitions import Partition

    _clear_caches()
    start = time.perf_counter()
    bad = []
    for n, text in SIGN_PARTIAL_SUMS.items():
        if full_table(n).row_partial_sums(Partition((1,) * n)) != _ints(text):
            bad.append(f"sign n={n}")
    for n, (values, sums) in STANDARD_CONJUGATE_ROW.items():
        lam = Partition((2,) + (1,) * (n - 2))
        t = full_table(n)
        if [int(x) for x in t.row(lam)] != _ints(values) or t.row_partial_sums(lam) != _ints(sums):
            bad.append(f"(2,1^{n - 2}) n={n}")
    secs = time.perf_counter() - start
    return Outcome(not bad and secs < 1.0, f"sign partial sums n = 8..13, (2,1^(n-2)) rows n = 7, 8; mismatches {bad}", secs)


def criterion_3() -> Outcome:
    from psipos.census import count_f

    start = time.perf_counter()
    bad = []
    for n in range(4, 9):
        r = count_f(n)
        if (r.f, r.lb) != (F_REFERENCE[n], LB_REFERENCE[n]):
            bad.append(f"n={n}: f={r.f} lb={r.lb}")
    small_secs = time.perf_counter() - start
    t9 = time.perf_counter()
    r9 = count_f(9)
    nine_secs = time.perf_counter() - t9
    if (r9.f, r9.lb) != (F_REFERENCE[9], LB_REFERENCE[9]):
        bad.append(f"n=9: f={r9.f} lb={r9.lb}")
    t10 = time.perf_counter()
    r10 = count_f(10, "mitm")
    ten_secs = time.perf_counter() - t10
    required = not bad and small_secs < 60 and nine_secs < 600
    ten_ok = r10.f == F_REFERENCE[10] and r10.lb == LB_REFERENCE[10] and ten_secs < 7200
    detail = (
        f"n=4..8 {'match' if not bad else bad} in {small_secs:.1f}s; f(9) in {nine_secs:.1f}s; "
        f"optional f(10): computed {r10.f} in {ten_secs:.1f}s vs reference {F_REFERENCE[10]}"
        f" ({'match' if ten_ok else 'MISMATCH'}), lb(10) {'matches' if r10.lb == LB_REFERENCE[10] else 'differs'}"
    )
    return Outcome(required and ten_ok, detail, time.perf_counter() - start)


def criterion_4() -> Outcome:
    from psipos.census import g

    start = time.perf_counter()
    top = 25 if LONG else 18
    computed = {n: g(n) for n in range(4, top + 1)}
    secs = time.perf_counter() - start
    bad = {n: (computed[n], G_REFERENCE[n]) for n in range(4, 19) if computed[n] != G_REFERENCE[n]}
    optional = {n: (computed[n], G_REFERENCE[n]) for n in range(19, top + 1) if computed[n] != G_REFERENCE[n]}
    detail = f"n = 4..{top}; differences (computed, reference): {bad or 'none'}"
    if LONG:
        detail += f"; optional 19..25 differences: {optional or 'none'}"
    return Outcome(not bad and secs < 600, detail, secs)


def criterion_5() -> Outcome:
    from psipos.lab import ClaimId, verify

    start = time.perf_counter()
    claims = [
        ClaimId.parse("interval-positivity", n=(1, 14)),
        ClaimId.parse("twos-minus-h2-squared", k=(2, 10)),
        ClaimId.parse("twos-step", k=(1, 5), m=(1, 5)),
        ClaimId.parse("odd-intervals", n=(1, 28 if LONG else 18)),
        ClaimId.parse("even-signature-intervals", n=(1, 14)),
    ]
    reports = [verify(c) for c in claims]
    conj1 = time.perf_counter() - start
    optional = verify(ClaimId.parse("interval-positivity", n=(15, 20)))
    secs = time.perf_counter() - start
    failing = [r.claim for r in reports if not r.ok]
    detail = (
        f"{sum(len(r.verdicts) for r in reports)} instances, failing claims {failing or 'none'}; "
        f"optional interval positivity n = 15..20: {'pass' if optional.ok else 'FAIL'}"
    )
    return Outcome(not failing and conj1 < 300, detail, secs)


def criterion_6() -> Outcome:
    from psipos.closed_forms import (
        TOP_INTERVAL_MIN_N,
        TOP_INTERVAL_VALID_FROM,
        TOP_PRODUCT_MIN_N,
        TOP_PRODUCT_VALID_FROM,
        FormulaId,
        check_instance,
        pair_in_domain,
        reducedness_check,
    )

    # empirically corrected starting points, each pinned in test_closed_forms.py
    logged = {
        ("top-product.11", 8),
        *((f"top-interval.{k}", n) for k in range(1, 12) for n in range(TOP_INTERVAL_MIN_N[k], TOP_INTERVAL_VALID_FROM[k])),
    }
    start = time.perf_counter()
    unexpected, checked = [], 0

    def run(name: str, args: tuple[int, ...]) -> None:
        nonlocal checked
        res = check_instance(FormulaId(name, args))
        checked += 1
        if not res.ok and (name, args[0]) not in logged:
            unexpected.append(res.formula)

    for m in range(1, 5):
        for n in range(1, 15):
            if pair_in_domain(n, m):
                run("pair", (n, m))
    for k in range(1, 12):
        for n in range(TOP_PRODUCT_MIN_N[k], 15):
            run(f"top-product.{k}", (n,))
        for n in range(TOP_INTERVAL_MIN_N[k], 15):
            run(f"top-interval.{k}", (n,))
    for n in range(8, 15):
        run("p2sq", (n,))
    logged_real = all(not check_instance(FormulaId(name, (n,))).ok for name, n in logged)
    bound = all(reducedness_check(k, range(TOP_INTERVAL_VALID_FROM[k], 15)).bound_ok for k in range(1, 12))
    secs = time.perf_counter() - start
    ok = not unexpected and bound and logged_real and all(
        TOP_PRODUCT_VALID_FROM[k] >= TOP_PRODUCT_MIN_N[k] for k in range(1, 12)
    )
    detail = (
        f"{checked} instances, {len(logged)} logged boundary mismatches confirmed, "
        f"unexpected mismatches {unexpected or 'none'}, coefficient bound <= 4 {'holds' if bound else 'FAILS'}"
    )
    return Outcome(ok, detail, secs)


def criterion_7() -> Outcome:
    from psipos.closed_forms import section3_identities
    from psipos.lab import boundary_probe, dominance_failures
    from psipos.partitions import Partition

    start = time.perf_counter()
    fails = dominance_failures(6)
    dominance = fails == [(Partition((4, 1, 1)), {Partition((1,) * 6): -1})]
    controls = [c for c in section3_identities() if c.name.endswith("not positive") and "g6" not in c.name]
    scaled_controls = bool(controls) and all(c.ok for c in controls)
    probes = {n: boundary_probe(n) for n in (8, 9, 10)}
    probe_ok = all(p.ok and p.observed[Partition((n - 3, 3))] == -6 for n, p in probes.items())
    secs = time.perf_counter() - start
    detail = (
        f"dominance n=6 {'ok' if dominance else 'FAIL'}; {len(controls)} scaled-difference controls "
        f"{'negative' if scaled_controls else 'FAIL'}; boundary probes {'ok' if probe_ok else 'FAIL'}"
    )
    return Outcome(dominance and scaled_controls and probe_ok, detail, secs)


def criterion_8() -> Outcome:
    from psipos.characters import full_table
    from psipos.models import (
        epsilon_by_plethysm,
        epsilon_n,
        hook_triangle,
        lie_identities,
        multiplicity_suite,
        psi_by_plethysm,
    )
    from psipos.partitions import conjugate, partitions_of
    from psipos.symfun import (
        PowerVector,
        SchurVector,
        omega,
        power_product_to_schur,
        power_to_schur,
        psum,
        schur_to_power,
    )

    start = time.perf_counter()
    failed = []
    if not all(full_table(n).column_orthogonality_ok() for n in range(1, 13)):
        failed.append("orthogonality")
    round_trip = strips = om = True
    for n in range(1, 11):
        t = full_table(n)
        for lam in partitions_of(n):
            s = SchurVector(n, {lam: 1})
            round_trip &= power_to_schur(schur_to_power(s)) == s
            om &= omega(s) == SchurVector(n, {conjugate(lam): 1}) and omega(omega(s)) == s
            v = power_product_to_schur(lam)
            strips &= all(v[r] == t.value(r, lam) for r in partitions_of(n))
            p = PowerVector.p(*lam)
            om &= power_to_schur(omega(p)) == omega(power_to_schur(p))
    for name, flag in (("round trips", round_trip), ("strip insertion", strips), ("omega", om)):
        if not flag:
            failed.append(name)
    if not all(psi_by_plethysm(n) == psum(partitions_of(n)) for n in range(1, 11)):
        failed.append("conjugacy action")
    if not all(epsilon_by_plethysm(n) == epsilon_n(n) for n in range(1, 11)):
        failed.append("twisted conjugacy action")
    if not lie_identities(10).ok:
        failed.append("plethysm identities")
    rows = {}
    for line in (TABLES / "hooks.txt").read_text().splitlines():
        n, values = line.split("\t")
        rows[int(n)] = tuple(int(x) for x in values.split())
    if hook_triangle(12).a != rows:
        failed.append("hook triangle")
    if not all(multiplicity_suite(n).ok for n in range(3, 13)):
        failed.append("multiplicity suite")
    secs = time.perf_counter() - start
    return Outcome(not failed, f"failing suites: {failed or 'none'}", secs)


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 9)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance(number):
    start = time.perf_counter()
    outcome = CRITERIA[number]()
    outcome.seconds = time.perf_counter() - start
    RESULTS[number] = outcome
    assert outcome.ok, outcome.line(number)


if __name__ == "__main__":
    status = 0
    for number, fn in CRITERIA.items():
        t0 = time.perf_counter()
        outcome = fn()
        outcome.seconds = time.perf_counter() - t0
        print(outcome.line(number), flush=True)
        status |= not outcome.ok
    sys.exit(status)
