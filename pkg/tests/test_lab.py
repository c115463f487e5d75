import json

import numpy as np
import pytest

from psipos.lab import (
    CLAIMS,
    FAMILY_ITEMS,
    ClaimId,
    all_claims,
    boundary_probe,
    check_conj1,
    check_conj4,
    check_conj5,
    check_dominance,
    dominance_failures,
    dominance_ideal,
    family_members,
    instances,
    interval_prefix_sums,
    restricted_interval,
    sign_runs,
    subset_sum,
    verify,
)
from psipos.models import psi_interval
from psipos.partitions import P, partitions_of


def test_claim_parsing():
    c = ClaimId.parse("families(8)")
    assert str(c) == "families.8" and c.item == 8
    assert ClaimId.parse("odd-intervals", max_n=20).range("n") == range(1, 21)
    assert ClaimId.parse("twos-step", max_k=2, max_m=3).range("k") == range(1, 3)
    with pytest.raises(ValueError):
        ClaimId.parse("no-such-claim")
    with pytest.raises(ValueError):
        ClaimId.parse("upper-intervals", max_n=3)


def test_every_claim_passes_at_default_ranges():
    reports = [verify(c) for c in all_claims()]
    assert len(reports) == len(CLAIMS) - 1 + len(FAMILY_ITEMS)
    bad = [(r.claim, [v.to_json_obj() for v in r.failures]) for r in reports if not r.ok]
    assert not bad


def test_parallel_report_matches_serial():
    claim = ClaimId.parse("interval-positivity", max_n=11)
    a = verify(claim, workers=1)
    b = verify(claim, workers=2)
    strip = lambda r: [(v.instance, v.status, v.witness) for v in r.verdicts]  # noqa: E731
    assert strip(a) == strip(b)


@pytest.mark.parametrize("restriction", ["all", "odd", "even"])
@pytest.mark.parametrize("n", range(1, 11))
def test_prefix_sums_match_expansions(n, restriction):
    ends, sums = interval_prefix_sums(n, restriction)
    rows = partitions_of(n)
    for j, mu in enumerate(ends):
        v = restricted_interval(mu, restriction)
        assert [v[lam] for lam in rows] == [int(x) for x in sums[:, j]]


@pytest.mark.parametrize("n", range(1, 13))
def test_vector_and_rows_modes_agree(n):
    for check in (check_conj1, check_conj4, check_conj5):
        assert check(n, "vector") == check(n, "rows")


def test_odd_intervals_beyond_default_range():
    report = verify(ClaimId.parse("odd-intervals", n=(19, 22)))
    assert report.ok


def test_conjecture_failure_is_flagged_not_hard():
    from psipos.lab import Verdict, VerdictReport

    r = VerdictReport("x", "conjecture", [Verdict("x", "n=1", "fail", {"lambda": "[1]"}, 0.0)])
    assert not r.ok and not r.hard_failure
    r = VerdictReport("x", "theorem", [Verdict("x", "n=1", "fail", None, 0.0)])
    assert r.hard_failure


def test_dominance_at_six():
    fails = dominance_failures(6)
    assert fails == [(P(4, 1, 1), {P(1, 1, 1, 1, 1, 1): -1})]
    ok, seen = check_dominance(6)
    assert ok


def test_dominance_ideal_is_downward_closed():
    ideal = dominance_ideal(P(4, 1, 1))
    assert P(4, 1, 1) in ideal and P(3, 3) not in ideal and P(3, 2, 1) in ideal


@pytest.mark.parametrize("n", range(7, 12))
def test_dominance_only_sign_negative(n):
    assert check_dominance(n)[0]


def test_dominance_at_twelve_has_a_second_negative():
    ok, seen = check_dominance(12)
    assert not ok
    assert seen["negatives"] == {"[1,1,1,1,1,1,1,1,1,1,1,1]": -1, "[2,1,1,1,1,1,1,1,1,1,1]": -1}


@pytest.mark.parametrize("n", [8, 9, 10])
def test_boundary_probe(n):
    probe = boundary_probe(n)
    assert probe.ok
    assert probe.observed[P(n - 3, 3)] == -6


def test_boundary_probe_domain():
    with pytest.raises(ValueError):
        boundary_probe(11)


def test_sign_runs():
    runs = sign_runs(13)
    found = runs.find([1, 2, 3, 4])
    assert found is not None and found.classes[-1] == P(7, 1, 1, 1, 1, 1, 1)
    assert sign_runs(2).sums == [1, 0]
    eight = sign_runs(8)
    assert eight.find([0, 1, 2]) is not None
    for run in eight.runs:
        steps = np.diff(run.values)
        assert (steps > 0).all() or (steps < 0).all()


def test_family_members_are_partitions_of_n():
    for item in FAMILY_ITEMS:
        for n in range(1, 9):
            for _, members in family_members(item, n):
                assert all(sum(m) == n for m in members)


def test_subset_sum_matches_interval():
    n = 7
    members = [lam for lam in partitions_of(n) if lam <= P(3, 2, 2)]
    v = psi_interval(P(3, 2, 2))
    assert [int(x) for x in subset_sum(n, members)] == [v[lam] for lam in partitions_of(n)]


def test_instances_labels_are_ordered():
    labels = [label for label, _ in instances(ClaimId.parse("hook-classes", max_n=5))]
    assert labels == ["n=1", "n=2", "n=3", "n=4", "n=5"]


def test_verdict_json():
    report = verify("known-negatives")
    obj = json.loads(report.to_json())
    assert obj["ok"] and obj["kind"] == "control"
    assert all("witness" in v for v in obj["verdicts"])
