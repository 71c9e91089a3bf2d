from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from biratio.algebra.bipoly import BiPoly
from biratio.algebra.scalars import QuadExt
from biratio.constructions.family import HermanFamilyParams, build_fn_theta, build_gn
from biratio.core.degrees import (AmpleClass, BidegreeMatrix, bidegree_matrix, deg_ample,
                                  degree_sequence, family_ample_class, family_lambda, family_matrix,
                                  xie_family_matrix_only, xie_lower_bound)
from biratio.core.maps import SurfaceMap, compose, iterate
from biratio.errors import DegenerateComposition, ResourceCapExceeded

from helpers import bipolys

x, y, one = BiPoly.x(), BiPoly.y(), BiPoly.const(1)
IDENTITY, SWAP = SurfaceMap.identity(), SurfaceMap.swap()


def control_map():
    f = SurfaceMap.from_fractions(y, one, y, x)
    return f.with_inverse(SurfaceMap.from_fractions(x, y, x, one))


def _np(M: BidegreeMatrix):
    return np.array(M.as_list(), dtype=object)


# --- composition -----------------------------------------------------------------

def test_inverse_round_trip():
    g = build_gn(2, 1)
    assert compose(g, g.inverse) == IDENTITY
    assert compose(SWAP, SWAP) == IDENTITY


def test_bidegree_of_g_squared():
    g = build_gn(2, 1)
    A = _np(family_matrix(1))
    # numpy oracle: A @ A = [[5, 2], [2, 1]]
    assert (A @ A).tolist() == [[5, 2], [2, 1]]
    assert bidegree_matrix(compose(g, g)).as_list() == [[5, 2], [2, 1]]


small_maps = st.tuples(bipolys(1, 3), bipolys(1, 3), bipolys(1, 3), bipolys(1, 3))


@given(small_maps, small_maps, small_maps)
def test_compose_associative(a, b, c):
    try:
        f, g, h = (SurfaceMap.from_fractions(*m) for m in (a, b, c))
        left = compose(compose(f, g), h)
        right = compose(f, compose(g, h))
    except (DegenerateComposition, ZeroDivisionError):
        assume(False)
    assert left == right


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("BIRATIO_MAX_DEGREE", "8")
    g = build_gn(2, 1)
    with pytest.raises(ResourceCapExceeded):
        iterate(g, 4)


def test_iterate_negative_uses_inverse():
    g = build_gn(3, 1)
    assert compose(iterate(g, -2), iterate(g, 2)) == IDENTITY


# --- bidegree matrices ---------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_family_matrix_of_gn(n, d):
    assert bidegree_matrix(build_gn(n, d)).as_list() == [[2 * d, 1], [1, 0]]


def test_bidegree_examples():
    assert bidegree_matrix(IDENTITY).as_list() == [[1, 0], [0, 1]]
    assert bidegree_matrix(control_map()).as_list() == [[0, 1], [1, 1]]


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_functoriality_gn(n, d):
    g = build_gn(n, d)
    assert bidegree_matrix(compose(g, g)) == bidegree_matrix(g) ** 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_functoriality_fn_theta(n):
    f = build_fn_theta(HermanFamilyParams(n, 1, Fraction(1, 3), Fraction(2, 5)))
    assert bidegree_matrix(compose(f, f)) == bidegree_matrix(f) ** 2


def test_degree_sequences():
    g = build_gn(2, 1)
    A = _np(family_matrix(1))
    seq = degree_sequence(g, 4)
    powers = [A, A @ A, A @ A @ A, A @ A @ A @ A]
    assert [m.as_list() for m in seq.matrices] == [p.tolist() for p in powers]
    assert all(m.as_list() == [[1, 0], [0, 1]] for m in degree_sequence(IDENTITY, 3).matrices)
    ctrl = degree_sequence(control_map(), 2).matrices
    assert ctrl[1].as_list() == [[1, 1], [1, 0]]
    assert ctrl[1] != ctrl[0] ** 2


# --- ample degrees -----------------------------------------------------------------

def test_deg_ample_examples():
    HV = AmpleClass(1, 1)
    assert deg_ample(IDENTITY, HV) == 2
    for d in (1, 2, 3):
        # A (1, 1) = (2d + 1, 1), paired with (1, 1): 2d + 2
        assert deg_ample(build_gn(2, d), HV) == 2 * d + 2


@pytest.mark.parametrize("d", [1, 2, 3, 16552])
def test_eigen_relation_and_degree_identities(d):
    lam = family_lambda(d)
    assert lam * lam == 2 * d * lam + 1
    v = xie_family_matrix_only(d, "test")
    assert v.deg_f == 2 * lam ** 3
    assert v.deg_f2 == 2 * lam ** 5
    L = family_ample_class(d)
    assert L.self_intersection() == 2 * lam


@pytest.mark.parametrize("d", [1, 2, 3])
def test_deg_ample_of_fn_theta(d):
    f = build_fn_theta(HermanFamilyParams(2, d, Fraction(1, 3), Fraction(2, 5)))
    assert deg_ample(f, family_ample_class(d)) == 2 * family_lambda(d) ** 3


@given(small_maps, st.fractions(min_value=Fraction(1, 10), max_value=10),
       st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_deg_ample_positive(m, u, v):
    try:
        f = SurfaceMap.from_fractions(*m)
    except ZeroDivisionError:
        assume(False)
    M = bidegree_matrix(f)
    assume(any(M.rows[0]) or any(M.rows[1]))
    assume(any(M.rows[0]) and any(M.rows[1]))  # nonconstant in both coordinates
    assert deg_ample(f, AmpleClass(u, v)) > 0


# --- dynamical degree test ----------------------------------------------------------

# frozen from the 60-digit mpmath oracle below
RATIO_16552_ENCLOSURE = ("1.00007683788166091508118683370", "1.00007683788166091508118683371")


def _mp_ratio(d):
    with mpmath.workdps(60):
        lam = d + mpmath.sqrt(d * d + 1)
        return lam ** 2 / (mpmath.mpf(2) ** 1.5 * mpmath.mpf(3) ** 18)


def test_xie_threshold():
    yes, no = xie_family_matrix_only(16552, "test"), xie_family_matrix_only(16551, "test")
    assert yes.certified and yes.verdict == "lambda_lower_bound > 1"
    assert not no.certified and no.verdict == "Inconclusive"
    assert _mp_ratio(16552) > 1 > _mp_ratio(16551)
    assert yes.enclosure == RATIO_16552_ENCLOSURE
    with mpmath.workdps(60):
        assert mpmath.mpf(RATIO_16552_ENCLOSURE[0]) <= _mp_ratio(16552) <= mpmath.mpf(RATIO_16552_ENCLOSURE[1])
    assert yes.checks["16*d^4 >= 2*3^36"]  # 4 d^2 >= 3^18 sqrt(2)
    assert no.checks["16*d^4 >= 2*3^36"]  # holds too: it is half the decisive inequality
    assert yes.checks["16*d^4 >= 8*3^36"] and not no.checks["16*d^4 >= 8*3^36"]


# frozen from sympy: 2 lam^3 and 2 lam^5 with lam = 1 + sqrt(2)
DEG_F_D1, DEG_F2_D1 = QuadExt(2, 14, 10), QuadExt(2, 82, 58)


def test_xie_symbolic_route_d1():
    lam = 1 + sympy.sqrt(2)
    assert sympy.expand(2 * lam ** 3) == 14 + 10 * sympy.sqrt(2)
    assert sympy.expand(2 * lam ** 5) == 82 + 58 * sympy.sqrt(2)
    f = build_fn_theta(HermanFamilyParams(2, 1, Fraction(1, 3), Fraction(2, 5)))
    v = xie_lower_bound(f, family_ample_class(1))
    assert (v.deg_f, v.deg_f2) == (DEG_F_D1, DEG_F2_D1)
    assert v.verdict == "Inconclusive"
