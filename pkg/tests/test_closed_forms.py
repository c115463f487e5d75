import pytest

from psipos.closed_forms import (
    FORMULAS,
    TOP_INTERVAL_MIN_N,
    TOP_INTERVAL_VALID_FROM,
    TOP_PRODUCT_MIN_N,
    TOP_PRODUCT_VALID_FROM,
    FormulaId,
    check_instance,
    emit,
    figure_pair_check,
    oracle,
    pair_omega_check,
    pair_parts,
    pair_term_count,
    reducedness_check,
    section3_identities,
    valid_range,
    verify_formula,
)
from psipos.symfun import SchurVector, is_schur_positive

MAX_N = 14


@pytest.mark.parametrize("m", range(1, 5))
def test_pair_products(m):
    report = verify_formula("pair", [(n, m) for n in range(max(m, 3), MAX_N + 1) if not n == m == 2])
    assert report.ok, report.first_mismatch


@pytest.mark.parametrize("m", range(1, 5))
def test_pair_term_count(m):
    for n in range(max(5, m + 1), MAX_N + 1):
        assert len(emit(FormulaId("pair", (n, m)))) == pair_term_count(n, m)


@pytest.mark.parametrize("m", range(1, 5))
def test_pair_conjugate_image(m):
    for n in range(max(5, m + 1), MAX_N + 1):
        assert pair_omega_check(n, m)


def test_pair_gamma4_proof_reading_fails():
    for n in range(5, 11):
        D, A, image = pair_parts(n, 4, gamma4="proof")
        got = D.vector() + A.vector() + image.vector()
        assert got != oracle(FormulaId("pair", (n, 4)))


def test_figure_pairs_need_the_repair():
    for n in range(5, MAX_N + 1):
        assert figure_pair_check(n, 4, repair=True).ok
    assert not figure_pair_check(8, 4, repair=False).ok


@pytest.mark.parametrize("k", range(1, 12))
def test_top_products(k):
    ns = range(TOP_PRODUCT_VALID_FROM[k], MAX_N + 1)
    assert valid_range(f"top-product.{k}", ns) == list(ns)


def test_top_product_item_11_fails_at_8():
    res = check_instance(FormulaId("top-product.11", (8,)))
    assert res.status == "mismatch"
    assert res.witness == {"partition": "[4,4]", "emitted": 1, "oracle": 0}


def test_p2sq():
    assert verify_formula("p2sq", range(8, MAX_N + 1)).ok


@pytest.mark.parametrize("k", range(1, 12))
def test_top_intervals(k):
    ns = range(TOP_INTERVAL_VALID_FROM[k], MAX_N + 1)
    assert valid_range(f"top-interval.{k}", ns) == list(ns)


@pytest.mark.parametrize("k", [k for k in range(1, 12) if TOP_INTERVAL_VALID_FROM[k] > TOP_INTERVAL_MIN_N[k]])
def test_top_interval_boundary_mismatches_are_real(k):
    """Below the empirical start the printed expansion differs from the class sum."""
    for n in range(TOP_INTERVAL_MIN_N[k], TOP_INTERVAL_VALID_FROM[k]):
        assert check_instance(FormulaId(f"top-interval.{k}", (n,))).status == "mismatch"


@pytest.mark.parametrize("k", range(1, 12))
def test_reducedness_bound(k):
    report = reducedness_check(k, range(TOP_INTERVAL_VALID_FROM[k], MAX_N + 1))
    assert report.bound_ok
    assert max(r.max_nontrivial for r in report.results) <= 4
    if k in (10, 11):
        assert max(r.max_nontrivial for r in report.results) == 4
    if k not in (8, 9):
        assert report.reduced


def test_out_of_range_is_reported():
    assert check_instance(FormulaId("p2sq", (5,))).status == "out_of_range"


def test_formula_id_parsing():
    assert FormulaId.parse("top-interval.10(12)") == FormulaId("top-interval.10", (12,))
    assert str(FormulaId("pair", (7, 3))) == "pair(7,3)"
    with pytest.raises(ValueError):
        FormulaId.parse("nonsense(1)")
    with pytest.raises(ValueError):
        FormulaId("pair", (7,))


@pytest.mark.parametrize("n", range(1, 13))
def test_ones_twos(n):
    assert check_instance(FormulaId("ones-twos", (n,))).ok


@pytest.mark.parametrize("m", range(1, 7))
def test_v_poly(m):
    assert check_instance(FormulaId("v-poly", (m,))).ok


def test_small_identities():
    for name in ("g4", "g6", "h2e2-quadratic"):
        assert check_instance(FormulaId(name)).ok


def test_g6_is_schur_positive():
    """The combination is Schur-positive; pin its full expansion."""
    g6 = emit(FormulaId("g6"))
    assert is_schur_positive(g6)
    assert g6 == SchurVector(
        6,
        {(6,): 2, (5, 1): 4, (4, 2): 3, (4, 1, 1): 2, (3, 1, 1, 1): 1, (2, 1, 1, 1, 1): 2, (1,) * 6: 1},
    )


def test_section3_identities():
    checks = section3_identities()
    failing = [c for c in checks if not c.ok]
    assert [c.name for c in failing] == ["g6 not positive"]


def test_every_formula_has_a_domain_description():
    assert all(spec.domain for spec in FORMULAS.values())
