import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hkcalc import (
    IdealHandle, PolyRing, QuotientRing, bracket_power, colength, ehk_sequence, frobenius_twist,
    homology_length, monomial_ehk_exact, resolve_ideal,
)
from hkcalc.hilbert import HilbertSeries, InfiniteLength, count_standard_monomials
from hkcalc.oracles import (
    dense_colength, degreewise_homology_length, monomials_of_degree, staircase_count,
)


def test_monomials_of_degree():
    assert len(monomials_of_degree(3, 4)) == 15
    assert monomials_of_degree(2, -1) == []


def test_staircase_requires_pure_powers():
    with pytest.raises(ValueError):
        staircase_count([(1, 1)], 2)


@settings(max_examples=30)
@given(st.sampled_from([2, 3]), st.data())
def test_dense_colength_agrees(p, data):
    S = PolyRing(p, "x y z")
    gens = [S.monomial(tuple(data.draw(st.integers(1, 3)) if k == v else 0 for k in range(3)))
            for v in range(3)]
    for _ in range(data.draw(st.integers(0, 2))):
        deg = data.draw(st.integers(1, 3))
        terms = {e: data.draw(st.integers(0, p - 1)) for e in monomials_of_degree(3, deg)}
        gens.append(S.from_dict(terms))
    I = IdealHandle(S, gens)
    assert colength(I) == dense_colength(S, gens)


def test_count_standard_monomials_matches_series():
    gens = [(3, 0, 0), (0, 2, 0), (0, 0, 4), (1, 1, 1)]
    h = HilbertSeries.of_monomial_ideal(gens, 3)
    assert h.length() == count_standard_monomials(gens, 3) == staircase_count(gens, 3)
    with pytest.raises(InfiniteLength):
        HilbertSeries.of_monomial_ideal([(1, 0)], 2).length()


def test_hilbert_series_arithmetic():
    a = HilbertSeries((1,), 2)
    b = HilbertSeries((1, -1), 2)
    assert (a - b).reduced() == HilbertSeries((0, 1), 2).reduced()
    assert HilbertSeries((1, 0, -1), 3).reduced() == HilbertSeries((1, 1), 2)
    assert [a.coefficient(t) for t in range(4)] == [1, 2, 3, 4]


CASES = [
    (2, "x y", ["x*y"]),
    (2, "x y z", ["x^3 + y^3 + z^3"]),
    (2, "x y z", ["x*y + z^2"]),
    (2, "x y", ["x^2", "x*y"]),
]


@pytest.mark.parametrize("case", CASES)
def test_degreewise_oracle(case):
    R = QuotientRing(*case)
    C = frobenius_twist(resolve_ideal(R, R.maximal_ideal(), 2), R.p)
    for i in (0, 1):
        assert degreewise_homology_length(C, i) == homology_length(C, i)


def random_monomial_ideal(rng: random.Random, m: int):
    gens = [tuple(rng.randint(1, 4) if k == v else 0 for k in range(m)) for v in range(m)]
    for _ in range(rng.randint(0, 3)):
        gens.append(tuple(rng.randint(0, 3) for _ in range(m)))
    return gens


def monomial_oracle_case(rng: random.Random):
    """One AC-style case: returns (p, gens, gb colengths, counted colengths, exact, limit)."""
    m = rng.choice([2, 3])
    p = rng.choice([2, 3])
    gens = random_monomial_ideal(rng, m)
    S = PolyRing(p, ["x", "y", "z"][:m])
    I = IdealHandle(S, [S.monomial(g) for g in gens])
    gb, counted = [], []
    for q in (p, p * p):
        gb.append(colength(bracket_power(I, q)))
        counted.append(staircase_count([tuple(q * e for e in g) for g in gens], m))
    exact = monomial_ehk_exact(gens)
    # colength of I^[q] is homogeneous of degree m in q, so the exact limit is l_q / q^m
    limits = {Fraction(c, q ** m) for c, q in zip(counted, (p, p * p))}
    return p, gens, gb, counted, exact, limits


def test_monomial_oracle_equivalence_small():
    rng = random.Random(7)
    for _ in range(10):
        p, gens, gb, counted, exact, limits = monomial_oracle_case(rng)
        assert gb == counted, gens
        assert limits == {exact}, gens


def test_monomial_ehk_against_sequence():
    R = QuotientRing(3, "x y")
    s = ehk_sequence(R, R.ideal(["x^2", "x*y", "y^2"]), 2)
    assert s.values == (27, 243) and set(s.normalized) == {3}
