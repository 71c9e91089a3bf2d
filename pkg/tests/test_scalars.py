from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from biratio.algebra.scalars import GaussRational, Ordering, QuadExt, quad_cmp
from biratio.errors import MixedField, ZeroDenominator

from conftest import fractions

D_VALUES = (2, 3, 5, 273968705)
quads = st.builds(QuadExt, st.sampled_from((2,)), fractions, fractions)
gauss = st.builds(GaussRational, fractions, fractions)


@given(quads, quads, quads)
def test_quadext_ring_axioms(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert u - u == QuadExt(2)


@given(quads)
def test_quadext_inverse_round_trip(u):
    if not u:
        with pytest.raises(ZeroDenominator):
            u.inverse()
        return
    assert u * u.inverse() == QuadExt(2, 1)
    assert (1 / u) * u == 1


@given(gauss, gauss, gauss)
def test_gauss_field_axioms(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert u * (v + w) == u * v + u * w
    if u:
        assert u * u.inverse() == GaussRational(1)
        assert (v / u) * u == v


@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    # the scalar base field is fractions.Fraction; checked here for completeness
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


def test_quad_cmp_examples():
    assert quad_cmp(QuadExt(5, 2, 1), Fraction(17, 4)) is Ordering.LESS
    u = QuadExt(7, Fraction(-3, 2), 4)
    assert quad_cmp(u, u) is Ordering.EQUAL
    assert quad_cmp(QuadExt(2, 1, 1), Fraction(5, 2)) is Ordering.LESS


def test_quad_cmp_mixed_field():
    with pytest.raises(MixedField):
        quad_cmp(QuadExt(2, 0, 1), QuadExt(3, 0, 1))


@settings(max_examples=1000)
@given(st.sampled_from(D_VALUES), fractions, fractions, fractions, fractions)
def test_quad_cmp_agrees_with_100_digits(D, a, b, c, e):
    u, v = QuadExt(D, a, b), QuadExt(D, c, e)
    with mpmath.workdps(100):
        diff = (mpmath.mpf(a.numerator) / a.denominator - mpmath.mpf(c.numerator) / c.denominator
                + (mpmath.mpf(b.numerator) / b.denominator - mpmath.mpf(e.numerator) / e.denominator)
                * mpmath.sqrt(D))
        expected = 0 if abs(diff) < mpmath.mpf(10) ** -80 else (1 if diff > 0 else -1)
    assert quad_cmp(u, v).value == expected


def test_sqrt_of_square_is_rational():
    assert QuadExt.sqrt(4 * 3) == QuadExt(3, 0, 2)
    assert QuadExt.sqrt(273968705) ** 2 == 273968705


@given(st.sampled_from(D_VALUES), fractions, fractions)
def test_enclosure_contains_value(D, a, b):
    lo, hi = QuadExt(D, a, b).enclosure()
    with mpmath.workdps(60):
        v = mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(D)
        assert mpmath.mpf(lo) <= v <= mpmath.mpf(hi)


def test_string_forms():
    assert str(QuadExt(2, 14, 10)) == "14+10*sqrt(2)"
    assert str(QuadExt(5, Fraction(1, 2), 0)) == "1/2"
    assert str(GaussRational(1, -2)) == "1-2*i"
