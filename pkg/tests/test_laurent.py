import pytest
from hypothesis import given, strategies as st

from valseq.laurent import (ONE, X, Y, Z, LaurentPoly, PolySyntaxError, divmod_monic, format_poly, measures,
                            parse_poly)

coef = st.integers(-9, 9).filter(bool)
mono = st.tuples(st.integers(-3, 5), st.integers(0, 4), st.integers(0, 3))
polys = st.dictionaries(mono, coef, max_size=6).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f
    assert f - f == LaurentPoly()


@given(polys)
def test_format_parse_round_trip(f):
    assert parse_poly(format_poly(f)) == f


def test_canonical_order():
    assert format_poly(X * Z - Y ** 2 + X ** 3) == "x*z - y^2 + x^3"
    assert format_poly(parse_poly("3/2*x^-2*y*z^3")) == "3/2*x^-2*y*z^3"
    assert parse_poly("2xy - x y") == X * Y


@pytest.mark.parametrize("text, col", [("x*+", 3), ("y^-1", 3), ("x + ", 5), ("3/0*x", 3), ("", 1), ("x y )", 5)])
def test_syntax_errors_report_columns(text, col):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text)
    assert info.value.col == col


def test_measures():
    f = parse_poly("x^-1*y^2*z + 3*x^4")
    m = measures(f)
    assert (m.ord_x, m.deg_y, m.deg_z) == (-1, 2, 1)
    assert m.lead_z == parse_poly("x^-1*y^2")


@given(polys)
def test_divmod_reassembles(f):
    g = Y ** 2 - X ** 3
    parts = divmod_monic(f, g, "y")
    total = LaurentPoly()
    for k, p in enumerate(parts):
        assert not p or p.deg("y") < 2
        total = total + p * g ** k
    assert total == f


def test_divmod_requires_monic():
    with pytest.raises(ValueError):
        divmod_monic(Y, X * Y, "y")
    assert divmod_monic(Y ** 3, ONE + Y, "y")
