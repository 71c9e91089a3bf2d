from fractions import Fraction

import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given, strategies as st

from biratio.algebra.bipoly import BiPoly
from biratio.algebra.multimodular import (coprime_to_resultant, resultant_zz, shared_factor,
                                          squarefree_part_zz)
from biratio.core.elimination import (_int_rows, gcd_q, monic, polynomial_roots, real_root_count,
                                      squarefree_part)

from helpers import X, Y, bipolys, to_sympy

univariate = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)


def _sym_uni(coeffs, var=X):
    return sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * var ** k
               for k, c in enumerate(coeffs))


def _coeffs(expr, var=X):
    p = sympy.Poly(expr, var)
    return tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                 for c in reversed(p.all_coeffs()))


@given(bipolys(coeff=5), bipolys(coeff=5))
def test_multimodular_resultant_matches_sympy(p, q):
    assume(p.deg_y() >= 1 and q.deg_y() >= 1)
    r = resultant_zz(_int_rows(p, "y"), _int_rows(q, "y"))
    expected = sympy.resultant(to_sympy(p), to_sympy(q), Y)
    assert _sym_uni(r) == sympy.expand(expected)


@given(bipolys(coeff=5), bipolys(coeff=5))
def test_resultant_with_lower_degree_first(p, q):
    # the first operand has smaller y-degree, possibly zero
    q = q * BiPoly.y() ** 3 + BiPoly.const(1)
    assume(not p.is_zero() and p.deg_y() < q.deg_y())
    r = resultant_zz(_int_rows(p, "y"), _int_rows(q, "y"))
    # Sylvester determinant as oracle: sympy.resultant drops the (-1)^(mn) sign when deg p < deg q
    expected = sylvester(to_sympy(p), to_sympy(q), Y, 1).det() if p.deg_y() else to_sympy(p) ** q.deg_y()
    assert _sym_uni(r) == sympy.expand(expected)


def test_resultant_constant_against_square():
    one, x2y2 = BiPoly.const(1), BiPoly.x() ** 2 * BiPoly.y() ** 2
    assert resultant_zz(_int_rows(one, "y"), _int_rows(x2y2, "y")) == [1]


@given(univariate, univariate)
def test_squarefree_part_matches_sympy(a, b):
    R = [int(c) for c in _coeffs(sympy.expand(_sym_uni(a) ** 2 * _sym_uni(b)))]
    got = squarefree_part_zz(R)
    expected = monic(_coeffs(sympy.sqf_part(_sym_uni(R)))) if len(R) > 1 else (Fraction(1),)
    assert got == expected
    assert squarefree_part(R) == expected


@given(univariate, bipolys(coeff=3), bipolys(coeff=3))
def test_shared_factor_is_exact_gcd(h, p, q):
    assume(p.deg_y() >= 1 and q.deg_y() >= 1)
    A, B = _int_rows(p, "y"), _int_rows(q, "y")
    res = sympy.resultant(to_sympy(p), to_sympy(q), Y)
    assume(res != 0)
    hq = squarefree_part(h)
    assume(len(hq) > 1)
    expected = gcd_q(hq, _coeffs(sympy.expand(res)) if sympy.degree(res, X) > 0 else (Fraction(1),))
    got = shared_factor(hq, A, B)
    if got is not None:
        assert monic(got) == expected
    if coprime_to_resultant(hq, A, B):
        assert expected == (Fraction(1),)


@given(univariate)
def test_real_root_count_matches_sympy(a):
    assert real_root_count(a) == len(set(sympy.real_roots(_sym_uni(a))))


def test_real_root_count_examples():
    assert real_root_count((-1, 0, 1)) == 2
    assert real_root_count((1, 0, 1)) == 0
    assert real_root_count((1, 2, 1)) == 1
    assert real_root_count((1, 0, 0, 1)) == 1


@given(univariate)
def test_polynomial_roots_within_radius(a):
    roots = polynomial_roots(a)
    assert len(roots) == len(a) - 1
    # nroots stalls on repeated roots; the squarefree part has the same root set
    for ref in sympy.Poly(sympy.sqf_part(_sym_uni(a)), X).nroots(n=30):
        ref = complex(ref)
        assert min(abs(z - ref) - max(r, 1e-9) for z, r in roots) <= 1e-7
