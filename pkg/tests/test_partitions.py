import pytest
from hypothesis import given
from hypothesis import strategies as st

from psipos.partitions import (
    DegreeMismatch,
    P,
    Partition,
    centralizer_size,
    conjugate,
    counting_suite,
    dominance_leq,
    format_partition,
    hook,
    parse_partition,
    partitions_of,
)
from strategies import partition_pairs, partitions

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(1, 15)] == PARTITION_COUNTS[1:]


def test_revlex_order_small():
    assert partitions_of(4) == (P(1, 1, 1, 1), P(2, 1, 1), P(2, 2), P(3, 1), P(4))
    assert partitions_of(6)[:4] == (P(1, 1, 1, 1, 1, 1), P(2, 1, 1, 1, 1), P(2, 2, 1, 1), P(2, 2, 2))


@pytest.mark.parametrize(
    "text, parts",
    [
        ("[3,1,1]", (3, 1, 1)),
        ("[3,1^2]", (3, 1, 1)),
        ("3,1^2", (3, 1, 1)),
        ("[1^8]", (1,) * 8),
        ("(2^3,1)", (2, 2, 2, 1)),
        ("[1,3]", (3, 1)),
        ("[]", ()),
    ],
)
def test_parse(text, parts):
    assert tuple(parse_partition(text)) == parts


@pytest.mark.parametrize("text", ["[2,1", "[0,1]", "[a]", "[2,,1]", "[2^]", "[-1]"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_partition(text)


@given(partitions(1, 14))
def test_format_parse_round_trip(lam):
    assert parse_partition(format_partition(lam)) == lam


@given(partitions(1, 14))
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@given(partition_pairs(1, 12))
def test_dominance_reverses_under_conjugation(pair):
    a, b = pair
    assert dominance_leq(a, b) == dominance_leq(conjugate(b), conjugate(a))


@given(partition_pairs(1, 12))
def test_dominance_refines_revlex(pair):
    a, b = pair
    if dominance_leq(a, b):
        assert a <= b


def test_dominance_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        dominance_leq(P(2, 1), P(2, 2))


@pytest.mark.parametrize("n", range(1, 11))
def test_class_sizes_sum_to_factorial(n):
    from math import factorial

    assert sum(factorial(n) // centralizer_size(lam) for lam in partitions_of(n)) == factorial(n)


def test_hook():
    assert hook(5, 0) == P(5)
    assert hook(5, 2) == P(3, 1, 1)
    assert hook(5, 4) == P(1, 1, 1, 1, 1)


@given(st.integers(1, 30))
def test_alpha_beta_identity(n):
    """Even and odd classes: their difference counts the self-conjugate partitions."""
    c = counting_suite(n)
    assert c.alpha + c.beta == c.p
    assert c.alpha - c.beta == c.self_conjugate


@pytest.mark.parametrize("n", range(1, 31))
def test_alpha_identity_range(n):
    c = counting_suite(n)
    assert c.alpha - c.beta == c.self_conjugate


@pytest.mark.parametrize("n", range(1, 16))
def test_odd_parts_equal_distinct_parts(n):
    distinct = sum(1 for lam in partitions_of(n) if len(set(lam)) == len(lam))
    assert counting_suite(n).odd_parts == distinct


def test_counting_suite_values():
    c = counting_suite(8)
    assert (c.p, c.self_conjugate, c.odd_parts) == (22, 2, 6)


@given(partitions(1, 14))
def test_sign_matches_conjugate_parity(lam):
    assert Partition(lam).sign() == (-1) ** (sum(lam) - len(lam))
