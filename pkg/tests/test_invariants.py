import logging
from fractions import Fraction

import pytest

from hkcalc import (
    PreconditionError, QuotientRing, cm_depth, corollary_check, ehk_sequence, extrapolate,
    inequality_suite, kunz_test, lemma_check, monomial_ehk_exact, regularity_report, ti_sequence,
)
from hkcalc.invariants import LengthSequence, finite_level_row, successive_differences_shrink

SINGULAR = [
    (2, "x y", ["x*y"]),
    (3, "x y z", ["x*y - z^2"]),
    (2, "x y z", ["x^3 + y^3 + z^3"]),
    (2, "x y", ["y^2"]),
    (2, "x y", ["x^2", "x*y"]),
]


def test_ehk_sequence_regular(reg2):
    s = ehk_sequence(reg2, None, 3)
    assert s.values == (4, 16, 64)
    assert s.normalized == (1, 1, 1)


def test_ehk_sequence_node():
    R = QuotientRing(2, "x y", ["x*y"])
    s = ehk_sequence(R, None, 4)
    assert s.values == tuple(2 * 2 ** n - 1 for n in range(1, 5))
    assert extrapolate(s).value == 2


def test_ehk_a1(a1):
    s = ehk_sequence(a1, None, 3)
    # frozen from the degreewise dense oracle (13 at q=3 was reproduced in test_oracles)
    assert s.values == (13, 121, 1093)
    assert abs(extrapolate(s).value - Fraction(3, 2)) < Fraction(1, 20)


def test_ti_sequence(reg2, a1):
    assert ti_sequence(reg2, None, 1, 3).values == (0, 0, 0)
    assert all(v > 0 for v in ti_sequence(a1, None, 1, 3).values)
    assert ti_sequence(a1, a1.ideal(["x", "y"]), 1, 3).values == (0, 0, 0)


def test_non_m_primary_rejected(a1):
    with pytest.raises(PreconditionError):
        ehk_sequence(a1, a1.ideal(["x"]), 2)


def _seq(values, p, d):
    return LengthSequence("synthetic", "m", "colength", p, d, tuple(values))


@pytest.mark.parametrize("alpha, beta, p, d", [
    (1, 0, 2, 2), (3, -1, 2, 2), (Fraction(3, 2), 5, 3, 2), (7, 11, 5, 3), (2, -1, 2, 1),
])
def test_extrapolate_exact_on_two_term_model(alpha, beta, p, d):
    for N in (2, 3, 4):
        values = [alpha * p ** (n * d) + beta * p ** (n * (d - 1)) for n in range(1, N + 1)]
        if any(Fraction(v).denominator != 1 or v < 0 for v in values):
            continue
        est = extrapolate(_seq([int(v) for v in values], p, d))
        assert est.richardson == alpha


def test_extrapolate_degenerate():
    est = extrapolate(_seq([5], 2, 2))
    assert est.richardson == Fraction(5, 4) and est.error_indicator == 0
    est = extrapolate(_seq([4, 16], 2, 2))
    assert est.richardson == 1 and est.error_indicator == 0


def test_successive_differences(caplog):
    assert successive_differences_shrink(_seq([13, 121, 1093], 3, 2))
    with caplog.at_level(logging.WARNING):
        assert not successive_differences_shrink(_seq([4, 16, 80], 2, 2))
    assert "settle" in caplog.text


@pytest.mark.parametrize("p, names", [(2, "x"), (3, "x y"), (5, "x y z"), (2, "x y z"), (3, "x")])
def test_kunz_polynomial_rings(p, names):
    assert kunz_test(QuotientRing(p, names))


@pytest.mark.parametrize("case", SINGULAR)
def test_kunz_singular(case):
    assert not kunz_test(QuotientRing(*case))


def test_monomial_ehk_exact():
    assert monomial_ehk_exact([(1, 0), (0, 1)]) == 1
    assert monomial_ehk_exact([(3, 0), (0, 5)]) == 15
    assert monomial_ehk_exact([(2, 0), (1, 1), (0, 2)]) == 3
    assert monomial_ehk_exact([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)]) == 0
    with pytest.raises(PreconditionError):
        monomial_ehk_exact([(1, 0), (1, 1)])


def test_cm_depth(reg3, a1):
    assert cm_depth(a1) == (2, True)
    assert cm_depth(reg3) == (3, True)
    assert cm_depth(QuotientRing(2, "x y", ["x^2", "x*y"])) == (0, False)


def test_regularity_reports(reg2, a1):
    r = regularity_report(reg2, 3)
    assert r.verdict == "regular"
    assert r.t1.value == 0 and r.t2.value == 0 and r.e_hk.value == 1
    r = regularity_report(a1, 3)
    assert r.verdict == "non-regular"
    assert r.t1.value >= Fraction(9, 10)
    r = regularity_report(QuotientRing(2, "x y", ["x*y"]), 3)
    assert r.verdict == "non-regular"
    assert abs(r.e_hk.value - 2) < Fraction(1, 20)


def test_finite_level_equality_on_regular_ring(reg2):
    m = reg2.maximal_ideal()
    for n in (1, 2):
        for q in (2, 4):
            row = finite_level_row(reg2, m, n, q)
            assert row.tor1_gap == 0 and row.tor2_gap == 0
            assert row.frobenius_colength == (q * 2 ** n) ** 2


def test_inequality_suite_a1_strict(a1):
    rep = inequality_suite(a1, None, n_max=2, q_list=[3, 9])
    assert all(r.tor1_gap > 0 and r.tor2_gap > 0 for r in rep.rows)
    assert all(c.holds for c in rep.estimate_checks)
    assert rep.cohen_macaulay


def test_inequality_suite_marks_non_cm_sums():
    R = QuotientRing(2, "x y", ["x^2", "x*y"])
    rep = inequality_suite(R, None, n_max=2)
    assert rep.all_finite_hold
    sums = [c for c in rep.estimate_checks if c.name.startswith("alternating")]
    assert sums and all("informational" in c.note for c in sums)


def test_lemma_check(reg2, a1):
    rep = lemma_check(reg2, ["x", "y"], 3)
    assert rep.tor1.values == (0, 0, 0) and rep.koszul_h1.values == (0, 0, 0)
    rep = lemma_check(a1, ["x", "y"], 3)
    assert all(rep.bound_holds) and rep.tor_trend_to_zero
    with pytest.raises(PreconditionError):
        lemma_check(a1, ["x"], 2)


def test_lemma_check_non_cm_sop():
    # x + y is a parameter on F_2[x,y]/(x^2, xy) but not a regular element
    R = QuotientRing(2, "x y", ["x^2", "x*y"])
    rep = lemma_check(R, ["x + y"], 3)
    assert all(rep.bound_holds)
    assert rep.tor1.values[0] > 0


def test_corollary(a1):
    rep = corollary_check(a1, 3)
    assert not rep.skipped and rep.multiplicity == 2 and rep.bound.holds
    assert rep.implied_t1_lower >= Fraction(9, 10)
    rep = corollary_check(QuotientRing(2, "x y", ["x^2", "x*y"]), 3)
    assert rep.skipped and "Cohen-Macaulay" in rep.notice and rep.depth == 0
