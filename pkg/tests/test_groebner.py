import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hkcalc import (
    HilbertSeries, IdealHandle, InfiniteLength, ModuleGB, MonomialOrder, PolyMatrix, PolyRing,
    bracket_power, buchberger, colength, hilbert_series, is_member, krull_dimension, lift,
    normal_form, syzygies,
)
from hkcalc.hilbert import hs_multiplicity
from hkcalc.oracles import dense_colength, staircase_count

LEX = MonomialOrder.LEX
S3 = PolyRing(3, "x y z")


def spoly(f, g):
    ring = f.ring
    lf, lg = f.leading_monomial, g.leading_monomial
    lcm = tuple(map(max, lf, lg))
    mf = ring.monomial(tuple(a - b for a, b in zip(lcm, lf)))
    mg = ring.monomial(tuple(a - b for a, b in zip(lcm, lg)))
    return mf * f.monic() - mg * g.monic()


def assert_reduced_gb(I: IdealHandle):
    G = I.gb
    for f, g in itertools.combinations(G, 2):
        assert I.reduce(spoly(f, g)).is_zero()
    for g in I.generators:
        assert I.reduce(g).is_zero()
    for f in G:
        assert f.leading_coefficient == 1
        others = IdealHandle(I.ring, [h for h in G if h != f])
        lms = [h.leading_monomial for h in others.generators]
        for exps, _ in f.terms():
            assert not any(all(a <= b for a, b in zip(m, exps)) for m in lms)


@st.composite
def random_polys(draw, ring, n_min=1, n_max=3, max_exp=2, max_terms=3):
    out = []
    for _ in range(draw(st.integers(n_min, n_max))):
        terms = draw(st.lists(st.tuples(st.tuples(*[st.integers(0, max_exp)] * ring.nvars),
                                        st.integers(1, ring.p - 1)), min_size=1, max_size=max_terms))
        out.append(ring.from_dict(dict(terms)))
    return out


# -- worked examples ----------------------------------------------------

def test_buchberger_lex_example():
    R = PolyRing(5, "x y", LEX)
    I = buchberger([R("x^2 - y"), R("x*y - 1")], LEX)
    assert set(I.gb) == {R("x - y^2"), R("y^3 - 1")}
    for g in (R("x^2 - y"), R("x*y - 1")):
        assert normal_form(g, I).is_zero()
    assert normal_form(R("x^3"), I) == R.one()


def test_buchberger_trivial_inputs():
    assert buchberger([S3("x^2")]).gb == (S3("x^2"),)
    assert set(buchberger([S3("x"), S3("y")]).gb) == {S3("x"), S3("y")}


def test_normal_form_examples():
    I = IdealHandle(S3, ["x*y - z^2"])
    assert normal_form(S3("x^2*y"), I) == S3("x*z^2")
    for g in I.gb:
        assert normal_form(g, I).is_zero()


def test_membership_examples():
    assert is_member(S3("x*y - z^2"), IdealHandle(S3, ["x*y - z^2", "x^3"]))
    assert not is_member(S3.one(), IdealHandle(S3, ["x", "y"]))
    I = IdealHandle(S3, ["x", "y"]) + IdealHandle(S3, ["x*y - z^2"])
    assert is_member(S3("z^2"), I)


def test_bracket_power_examples():
    m = IdealHandle(S3, ["x", "y"])
    assert bracket_power(m, 3) == IdealHandle(S3, ["x^3", "y^3"])
    R2 = PolyRing(2, "x y")
    assert bracket_power(IdealHandle(R2, ["x + y"]), 2).generators == (R2("x^2 + y^2"),)
    m2 = IdealHandle(R2, ["x", "y"])
    assert bracket_power(m2, 4) == bracket_power(bracket_power(m2, 2), 2)
    with pytest.raises(ValueError):
        bracket_power(m2, 6)


def test_colength_examples():
    S = PolyRing(7, "x y")
    assert colength(IdealHandle(S, ["x^2", "y^3"])) == 6
    for q in (2, 4, 8):
        assert colength(bracket_power(IdealHandle.maximal(PolyRing(2, "a b c d")), q)) == q ** 4
    I = IdealHandle(S3, ["x*y - z^2", "x^3", "y^3", "z^3"])
    assert colength(I) == dense_colength(S3, I.generators) == 13
    with pytest.raises(InfiniteLength, match="z"):
        colength(IdealHandle(S3, ["x", "y"]))


def test_krull_dimension_examples():
    assert krull_dimension(IdealHandle(S3, [])) == 3
    assert krull_dimension(IdealHandle(S3, ["x*y - z^2"])) == 2
    assert krull_dimension(IdealHandle(S3, ["x*y", "x*z"])) == 2
    assert krull_dimension(IdealHandle(S3, ["x", "y", "z"])) == 0


def test_hilbert_series_examples():
    S2 = PolyRing(3, "x y")
    assert hilbert_series(IdealHandle(S2, ["x^2"])).reduced() == HilbertSeries((1, 0, -1), 2).reduced()
    assert hilbert_series(IdealHandle(S3, [])) == HilbertSeries((1,), 3)
    h = hilbert_series(IdealHandle(S3, ["x*y - z^2"]))
    assert h.reduced() == HilbertSeries((1, 0, -1), 3).reduced()
    assert hs_multiplicity(h) == 2
    assert hs_multiplicity(hilbert_series(IdealHandle(S3, ["x^3 + y^3 + z^3"]))) == 3
    assert hs_multiplicity(hilbert_series(IdealHandle(S3, []))) == 1
    with pytest.raises(ValueError):
        hilbert_series(IdealHandle(S3, ["x*y - z"]))


def test_syzygy_examples():
    S2 = PolyRing(3, "x y")
    M = PolyMatrix.from_rows(S2, [["x", "y"]])
    Z = syzygies(M)
    assert Z.shape == (2, 1)
    col = Z.column(0)
    assert col in ([S2("y"), S2("-x")], [S2("-y"), S2("x")])
    assert syzygies(PolyMatrix.identity(S3, 3)).cols == 0


def test_syzygies_modulo_relation():
    J = IdealHandle(S3, ["x*y - z^2"])
    M = PolyMatrix.from_rows(S3, [["x", "y", "z"]])
    Z = syzygies(M, J)
    assert Z.cols == 4
    for e in (M @ Z).entries:
        assert J.reduce(e).is_zero()
    module = ModuleGB(S3, 3, Z.columns(), J)
    for known in (["y", "0", "-z"], ["y", "-x", "0"], ["z", "0", "-x"], ["0", "z", "-y"]):
        assert module.contains([S3(e) for e in known])


def test_lift():
    M = PolyMatrix.from_rows(S3, [["x", "y"]])
    u = lift(M, [S3("x^2 + y*z")])
    assert (M @ PolyMatrix.from_columns(S3, [u])).entries[0] == S3("x^2 + y*z")
    with pytest.raises(ValueError):
        lift(M, [S3("z")])


def test_reduce_rejects_order_mismatch():
    I = IdealHandle(S3, ["x"])
    with pytest.raises(ValueError):
        I.reduce(S3.with_order(LEX)("x"))


# -- properties -----------------------------------------------------------

@pytest.mark.parametrize("ring", [PolyRing(3, "x y z"), PolyRing(5, "x y"), PolyRing(2, "x y z", LEX)])
@settings(max_examples=25)
@given(data=st.data())
def test_gb_correctness(ring, data):
    I = IdealHandle(ring, data.draw(random_polys(ring)))
    assert_reduced_gb(I)


@settings(max_examples=40)
@given(random_polys(S3), random_polys(S3, 1, 1, max_exp=4, max_terms=5))
def test_normal_form_idempotent(gens, fs):
    I = IdealHandle(S3, gens)
    f = fs[0]
    r = normal_form(f, I)
    assert normal_form(r, I) == r
    assert is_member(f - r, I)


@st.composite
def m_primary(draw, ring):
    pure = [ring.monomial(tuple(draw(st.integers(1, 3)) if k == v else 0 for k in range(ring.nvars)))
            for v in range(ring.nvars)]
    return pure + draw(random_polys(ring, 0, 2))


@pytest.mark.parametrize("ring", [PolyRing(2, "x y z"), PolyRing(3, "x y")])
@settings(max_examples=25)
@given(data=st.data())
def test_bracket_power_generator_independence(ring, data):
    I = IdealHandle(ring, data.draw(m_primary(ring)))
    J = IdealHandle(ring, I.gb)
    assert bracket_power(I, ring.p).gb == bracket_power(J, ring.p).gb


@settings(max_examples=60)
@given(st.integers(2, 3), st.data())
def test_colength_matches_staircase(m, data):
    pure = [tuple(data.draw(st.integers(1, 5)) if k == v else 0 for k in range(m)) for v in range(m)]
    extra = data.draw(st.lists(st.tuples(*[st.integers(0, 4)] * m), max_size=4))
    gens = pure + extra
    ring = PolyRing(2, ["x", "y", "z"][:m])
    I = IdealHandle(ring, [ring.monomial(e) for e in gens])
    assert colength(I) == staircase_count(gens, m)


HOMOGENEOUS = [
    [], ["x*y - z^2"], ["x*y", "x*z"], ["x^2", "x*y"], ["x^3 + y^3 + z^3"], ["x", "y^2"],
    ["x*y", "y*z", "x*z"], ["x^2", "y^2", "z^2"], ["x*y - z^2", "x^2"],
]


@pytest.mark.parametrize("gens", HOMOGENEOUS)
def test_dimension_consistency(gens):
    for p in (2, 3):
        S = PolyRing(p, "x y z")
        I = IdealHandle(S, gens)
        assert krull_dimension(I) == hilbert_series(I).dimension
