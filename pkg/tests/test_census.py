import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from psipos.census import (
    census_problem,
    count_dominating_pairs,
    count_f,
    direct_histogram,
    g,
    jit_enabled,
    lower_bound,
    mitm_counts,
    negative_capable,
    sign_row_failures_by_parity,
    slacks,
    subset_sums,
    threshold_facts,
)
from psipos.characters import full_table
from psipos.partitions import P, partitions_of
from golden import (
    BOTH_ROWS_N8,
    F_REFERENCE,
    F_RATIO_REFERENCE,
    G_COMPUTED_DIFFERS,
    G_REFERENCE,
    LB_REFERENCE,
    LB_RATIO_REFERENCE,
)


def brute_force_f(n):
    """Enumerate every subset containing the identity against every row."""
    t = full_table(n)
    rows = t.rows.astype(np.int64)
    m = rows.shape[1] - 1
    count = 0
    for mask in range(1 << m):
        s = rows[:, 0].copy()
        for j in range(m):
            if mask >> j & 1:
                s += rows[:, j + 1]
        count += bool((s < 0).any())
    return count


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_f_against_brute_force(n):
    assert count_f(n).f == brute_force_f(n)


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("strategy", ["direct", "mitm"])
def test_reference_f_and_lower_bound(n, strategy):
    r = count_f(n, strategy)
    assert (r.f, r.lb) == (F_REFERENCE[n], LB_REFERENCE[n])
    assert r.ratio == Fraction(F_REFERENCE[n], 2 ** (len(partitions_of(n)) - 1))


@pytest.mark.parametrize("n", range(4, 10))
def test_ratio_decimals(n):
    total = 2 ** (len(partitions_of(n)) - 1)
    for value, printed in ((F_REFERENCE[n], F_RATIO_REFERENCE[n]), (LB_REFERENCE[n], LB_RATIO_REFERENCE[n])):
        digits = len(printed.split(".")[1])
        assert f"{value / total:.{digits}f}" == printed


@pytest.mark.parametrize("n", range(2, 11))
def test_lower_bound_is_sign_row_failures(n):
    sign = P(*(1,) * n)
    r = count_f(n, "mitm" if n >= 9 else "direct", rows=[sign])
    assert r.per_row_failures[sign] == r.f == lower_bound(n)
    if n <= 9:
        assert lower_bound(n) == sign_row_failures_by_parity(n)


def test_lower_bound_reference_through_ten():
    for n in range(4, 11):
        assert lower_bound(n) == LB_REFERENCE[n]


def test_breakdowns():
    r6 = count_f(6, "direct")
    assert list(r6.per_row_failures.values())[0] == 176
    r7 = count_f(7, "direct")
    assert r7.per_row_failures == {P(1, 1, 1, 1, 1, 1, 1): 3473, P(2, 1, 1, 1, 1, 1): 384}
    assert r7.joint_failures[(P(1, 1, 1, 1, 1, 1, 1), P(2, 1, 1, 1, 1, 1))] == 183


def test_both_rows_at_eight():
    sign, std = P(*(1,) * 8), P(2, *(1,) * 6)
    for strategy in ("direct", "mitm"):
        r = count_f(8, strategy, joint=True)
        assert r.per_row_failures == {sign: 401930, std: 153008}
        assert r.joint_failures[(sign, std)] == BOTH_ROWS_N8
        assert r.f == 401930 + 153008 - BOTH_ROWS_N8


@pytest.mark.parametrize("n", range(4, 19))
def test_g_against_reference_table(n):
    expected = G_COMPUTED_DIFFERS.get(n, G_REFERENCE[n])
    assert g(n) == expected


def test_g_differences_are_real():
    """Each extra row at n = 15 has a subset driving it negative."""
    caps = {c.shape: c.slack for c in negative_capable(15)}
    for lam in (P(4, *(1,) * 11), P(2, 2, 2, 2, *(1,) * 7), P(3, 2, 2, *(1,) * 8), P(3, 3, *(1,) * 9)):
        assert caps[lam] < 0


def test_negative_capable_lists():
    assert [c.shape for c in negative_capable(8)] == [P(*(1,) * 8), P(2, *(1,) * 6)]
    assert [c.shape for c in negative_capable(10)] == [
        P(*(1,) * 10),
        P(2, *(1,) * 8),
        P(2, 2, *(1,) * 6),
        P(3, *(1,) * 7),
        P(9, 1),
    ]
    assert g(6) == 3


def test_slack_is_exact():
    """Taking exactly the negative columns reaches the slack."""
    n = 9
    t = full_table(n)
    s = slacks(n)
    for i in range(len(t.classes)):
        row = t.rows[i]
        assert s[i] == row[0] + np.minimum(row[1:], 0).sum()


def test_threshold_facts():
    facts = threshold_facts(range(4, 16))
    assert all(f.ok for f in facts), [f for f in facts if not f.ok]


@pytest.mark.parametrize("use_jit", [True, False])
@pytest.mark.parametrize("n", range(4, 9))
def test_direct_equals_mitm(n, use_jit):
    problem = census_problem(n)
    hist = direct_histogram(problem, 1, use_jit)
    good_all, per_row, joint = mitm_counts(problem, 1, use_jit, breakdown="joint")
    assert int(hist[0]) == good_all
    assert np.array_equal(np.asarray(joint, dtype=np.int64), hist)


def test_jit_and_numpy_agree_on_counts():
    a = count_f(8, "direct", use_jit=True)
    b = count_f(8, "direct", use_jit=False)
    assert (a.f, a.per_row_failures) == (b.f, b.per_row_failures)


def test_jit_flag_env(monkeypatch):
    monkeypatch.setenv("PSIPOS_DISABLE_JIT", "1")
    assert not jit_enabled()
    monkeypatch.setenv("PSIPOS_DISABLE_JIT", "0")
    assert jit_enabled()


@given(
    st.integers(1, 40).flatmap(
        lambda k: st.tuples(
            st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=k, max_size=k),
            st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=30),
        )
    ),
    st.booleans(),
)
def test_dominance_counting_matches_brute_force(data, use_jit):
    points = np.array(data[0], dtype=np.int64)
    queries = np.array(data[1], dtype=np.int64)
    weights = np.arange(1, len(queries) + 1, dtype=np.int64)
    expected = sum(int(w) * int((points >= q).all(axis=1).sum()) for q, w in zip(queries, weights))
    assert count_dominating_pairs(points, queries, weights, use_jit) == expected


def test_subset_sums_order():
    cols = np.array([[1, 0], [0, 2]], dtype=np.int64)
    assert subset_sums(cols).tolist() == [[0, 0], [1, 0], [0, 2], [1, 2]]


def test_rows_restriction_and_idle_classes():
    r = count_f(8, rows=[P(*(1,) * 8)])
    assert r.f == 401930
    problem = census_problem(6, rows=[P(3, 3)])
    assert problem.idle > 0
    r = count_f(6, rows=[P(3, 3)])
    assert r.f == brute_force_rows(6, P(3, 3))


def brute_force_rows(n, lam):
    t = full_table(n)
    row = t.row(lam)
    m = len(row) - 1
    return sum(1 for mask in range(1 << m) if row[0] + sum(row[j + 1] for j in range(m) if mask >> j & 1) < 0)


def test_checkpoint_resume(tmp_path):
    first = count_f(9, "mitm", checkpoint=tmp_path)
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "half-0.bin" in files and "half-1.bin" in files
    assert any(name.startswith("sweep-") for name in files)
    second = count_f(9, "mitm", checkpoint=tmp_path)
    assert second.f == first.f == F_REFERENCE[9]


def test_checkpoint_rejects_foreign_half(tmp_path):
    count_f(7, "mitm", checkpoint=tmp_path)
    # a different row selection has a different fingerprint and recomputes cleanly
    r = count_f(7, "mitm", rows=[P(*(1,) * 7)], checkpoint=tmp_path)
    assert r.f == 3473


def test_report_formats():
    r = count_f(6)
    obj = json.loads(r.to_json())
    assert obj["f"] == 184 and obj["ratio"]["exact"] == "23/128"
    assert r.to_csv().splitlines()[1].startswith("6,direct,184,3,176")
    assert "f = 184" in r.to_text()


def test_strategy_validation():
    with pytest.raises(ValueError):
        count_f(6, "fastest")


@given(st.lists(st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3), min_size=1, max_size=50), st.booleans())
def test_unique_rows_matches_numpy(rows, huge):
    from psipos.census.mitm import unique_rows

    a = np.array(rows, dtype=np.int64)
    if huge:
        a[0, 0] = 2**61  # forces the fallback path
    got_rows, got_counts = unique_rows(a)
    want_rows, want_counts = np.unique(a, axis=0, return_counts=True)
    assert np.array_equal(got_rows, want_rows) and np.array_equal(got_counts, want_counts)
