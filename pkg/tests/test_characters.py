import numpy as np
import pytest
from hypothesis import given

from psipos.characters import (
    CapacityError,
    character_row,
    class_columns,
    dimension,
    full_table,
    mn_character,
    transposition_character,
)
from psipos.partitions import P, Partition, conjugate, partitions_of
from golden import SIGN_PARTIAL_SUMS, STANDARD_CONJUGATE_ROW
from strategies import partition_pairs, partitions


def _ints(text):
    return [int(x) for x in text.split(",")]


def test_s2_rows():
    t = full_table(2)
    assert t.classes == (P(1, 1), P(2))
    assert {tuple(int(x) for x in r) for r in t.rows} == {(1, 1), (1, -1)}
    assert list(t.row(P(2))) == [1, 1]
    assert list(t.row(P(1, 1))) == [1, -1]


def test_s4_table():
    t = full_table(4)
    assert t.rows.tolist() == [
        [1, -1, 1, 1, -1],
        [3, -1, -1, 0, 1],
        [2, 0, 2, -1, 0],
        [3, 1, -1, 0, -1],
        [1, 1, 1, 1, 1],
    ]


def test_s5_dimensions():
    assert full_table(5).dimensions().tolist() == [1, 4, 5, 6, 5, 4, 1]


@pytest.mark.parametrize("n", range(1, 13))
def test_orthogonality(n):
    t = full_table(n)
    assert t.column_orthogonality_ok()
    if n <= 9:
        assert t.row_orthogonality_ok()


@pytest.mark.parametrize("n", range(1, 11))
def test_table_matches_single_entry_oracle(n):
    t = full_table(n)
    for lam in partitions_of(n):
        assert [int(x) for x in t.row(lam)] == character_row(lam)
    for lam in partitions_of(n)[:: max(1, len(partitions_of(n)) // 6)]:
        for mu in partitions_of(n):
            assert t.value(lam, mu) == mn_character(lam, mu)


@given(partitions(1, 12))
def test_hook_length_dimension(lam):
    assert dimension(lam) == full_table(sum(lam)).value(lam, (1,) * sum(lam))


@given(partitions(2, 12))
def test_transposition_character(lam):
    n = sum(lam)
    assert transposition_character(lam) == full_table(n).value(lam, (2,) + (1,) * (n - 2))


@given(partition_pairs(1, 12))
def test_conjugate_row_is_sign_twist(pair):
    lam, mu = pair
    t = full_table(sum(lam))
    assert t.value(conjugate(lam), mu) == Partition(mu).sign() * t.value(lam, mu)


@pytest.mark.parametrize("n", sorted(SIGN_PARTIAL_SUMS))
def test_sign_partial_sums(n):
    assert full_table(n).row_partial_sums(P(*(1,) * n)) == _ints(SIGN_PARTIAL_SUMS[n])


@pytest.mark.parametrize("n", sorted(STANDARD_CONJUGATE_ROW))
def test_standard_conjugate_row(n):
    values, sums = STANDARD_CONJUGATE_ROW[n]
    lam = P(2, *(1,) * (n - 2))
    t = full_table(n)
    assert [int(x) for x in t.row(lam)] == _ints(values)
    assert t.row_partial_sums(lam) == _ints(sums)


@pytest.mark.parametrize("n", [6, 9, 12, 14])
def test_class_columns_match_table(n):
    t = full_table(n)
    chosen = [mu for mu in partitions_of(n) if all(p % 2 for p in mu)] + [P(n)]
    cols = class_columns(n, chosen)
    for j, mu in enumerate(chosen):
        assert np.array_equal(cols[:, j], t.column(mu))


def test_capacity_error():
    with pytest.raises(CapacityError):
        full_table(40)


def test_table_serialization():
    t = full_table(3)
    assert t.to_csv().splitlines()[0] == 'lambda,"[1,1,1]","[2,1]",[3]'
    assert '"z": [6, 2, 3]' in t.to_json()
