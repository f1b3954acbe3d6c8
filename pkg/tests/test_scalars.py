"""Exact coefficient ring."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opcalc.scalars import (CRat, ExactDivisionError, ScalarPoly, i_times,
                            monomial_label)

fractions = st.builds(Fraction,
                      st.integers(min_value=-50, max_value=50),
                      st.integers(min_value=1, max_value=9))
crats = st.builds(CRat, fractions, fractions)


def scalar_polys(symbols=("c", "hbar"), min_exp=-2, max_exp=3):
    monomial = st.dictionaries(
        st.sampled_from(symbols),
        st.integers(min_value=min_exp, max_value=max_exp).filter(lambda e: e),
        max_size=len(symbols),
    ).map(lambda d: tuple(sorted(d.items())))
    return st.dictionaries(monomial, crats, max_size=4).map(ScalarPoly)


@given(a=crats, b=crats, c=crats)
def test_crat_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(a=crats, b=crats)
def test_crat_division_exact(a, b):
    if not b:
        with pytest.raises(ZeroDivisionError):
            a / b
    else:
        assert (a / b) * b == a


def test_crat_basics():
    i = CRat(0, 1)
    assert i * i == CRat(-1)
    assert CRat(Fraction(1, 2)) + CRat(Fraction(1, 3)) == CRat(Fraction(5, 6))
    assert str(CRat(2)) == "2"
    assert CRat(1, 1).conjugate() == CRat(1, -1)
    assert complex(CRat(1, 2).to_complex()) == 1 + 2j


@settings(max_examples=60)
@given(a=scalar_polys(), b=scalar_polys(), c=scalar_polys())
def test_scalar_poly_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60)
@given(a=scalar_polys())
def test_scalar_poly_additive_inverse(a):
    assert (a + (-a)).is_zero()
    assert a - a == ScalarPoly.zero()


def test_symbol_and_powers():
    h = ScalarPoly.symbol("hbar")
    assert h ** 0 == ScalarPoly.one()
    assert h ** 3 == h * h * h
    assert h ** -2 == ScalarPoly.symbol("hbar", -2)
    assert (2 * h).inverse() * (2 * h) == ScalarPoly.one()
    with pytest.raises(ExactDivisionError):
        (h + 1).inverse()


def test_div_exact_semantics():
    h = ScalarPoly.symbol("hbar")
    ih = i_times()
    poly = ih * ScalarPoly.symbol("m", -1) * 3
    quotient = poly.div_exact(ih)
    assert quotient == ScalarPoly.symbol("m", -1) * 3
    # dividing an hbar-free term by hbar must fail, not create hbar^-1
    with pytest.raises(ExactDivisionError):
        ScalarPoly.symbol("c").div_exact(ih)
    with pytest.raises(ExactDivisionError):
        (h + 1).div_exact(h)
    with pytest.raises(ExactDivisionError):
        h.div_exact(h + 1)  # divisor must be a monomial


def test_evaluate_and_coefficient_of():
    h = ScalarPoly.symbol("hbar")
    m = ScalarPoly.symbol("m")
    poly = h * h * 2 + m.inverse() * CRat(0, 1)
    value = poly.evaluate({"hbar": 3.0, "m": 4.0})
    assert value == pytest.approx(18 + 0.25j)
    with pytest.raises(KeyError):
        poly.evaluate({"hbar": 3.0})
    assert poly.coefficient_of("hbar", 2) == ScalarPoly.number(2)
    assert poly.coefficient_of("m", -1) == ScalarPoly.number(CRat(0, 1))
    assert poly.coefficient_of("hbar", 5).is_zero()


def test_labels_and_json():
    mono = (("c", 2), ("hbar", 1))
    assert monomial_label(mono) == "c^2*hbar"
    assert monomial_label(()) == "1"
    poly = ScalarPoly.symbol("c", 2) * ScalarPoly.symbol("hbar") * CRat(Fraction(1, 2), 1)
    assert poly.to_json_obj() == {"c^2*hbar": [1, 2, 1, 1]}


def test_constants():
    assert ScalarPoly.i() * ScalarPoly.i() == ScalarPoly.number(-1)
    assert i_times() == ScalarPoly.i() * ScalarPoly.symbol("hbar")
    assert ScalarPoly.rational(3, 6) == ScalarPoly.rational(1, 2)
    assert ScalarPoly.zero().is_constant()
    assert not ScalarPoly.symbol("c").is_constant()
