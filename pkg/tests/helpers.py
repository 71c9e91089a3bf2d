"""Shared strategies and sympy oracles for the exact-algebra tests."""
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from biratio.algebra.bipoly import BiPoly

X, Y = sympy.symbols("x y")


def bipolys(max_deg: int = 2, coeff: int = 4, min_terms: int = 1):
    mono = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg))
    c = st.integers(-coeff, coeff).filter(bool)
    return st.dictionaries(mono, c, min_size=min_terms, max_size=5).map(BiPoly)


def to_sympy(p: BiPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** i * Y ** j
                for (i, j), c in p.items()), sympy.Integer(0))


def from_sympy(expr) -> BiPoly:
    poly = sympy.Poly(sympy.expand(expr), X, Y)
    return BiPoly({m: Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                   for m, c in poly.terms()})


def same_up_to_unit(p: BiPoly, q: BiPoly) -> bool:
    return p.normalize() == q.normalize()
