import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from biratio.algebra.bipoly import BiPoly
from biratio.constructions.family import HermanFamilyParams, build_fn_theta, build_gn
from biratio.core.indeterminacy import hausdorff, ind_disjoint, indeterminacy_set
from biratio.core.maps import SurfaceMap
from biratio.errors import PositiveDimensionalLocus

from helpers import bipolys
from test_maps_degrees import control_map

TOL = 1e-10


def _pairs(points):
    return [(p.x, p.y) for p in points]


def test_ind_of_g2():
    ind = indeterminacy_set(build_gn(2, 1))
    # numpy oracle: roots of x^2 + x + 1 and x^2 + 1
    Z, P = np.roots([1, 1, 1]), np.roots([1, 0, 1])
    expected = [(complex(z), None) for z in Z] + [(complex(p), 0j) for p in P]
    assert ind.count == 4
    assert hausdorff(_pairs(ind.points), expected) < TOL
    # frozen: the zeros are e^(+-2 pi i / 3)
    assert hausdorff([(z, None) for z in Z], [(cmath.exp(s * 2j * cmath.pi / 3), None) for s in (1, -1)]) < TOL


def test_ind_of_g2_inverse_swaps_axes():
    ind = indeterminacy_set(build_gn(2, 1).inverse)
    Z, P = np.roots([1, 1, 1]), np.roots([1, 0, 1])
    expected = [(0j, complex(z)) for z in Z] + [(None, complex(p)) for p in P]
    assert hausdorff(_pairs(ind.points), expected) < TOL


def test_ind_of_identity_is_empty():
    assert indeterminacy_set(SurfaceMap.identity()).is_empty()


def test_ind_of_control():
    ind = indeterminacy_set(control_map())
    assert hausdorff(_pairs(ind.points), [(0j, 0j), (None, None)]) < TOL


def test_disjointness_examples():
    assert ind_disjoint(build_gn(2, 1)).verdict == "Disjoint"
    f = build_fn_theta(HermanFamilyParams(2, 1, Fraction(1, 3), Fraction(2, 5)))
    assert ind_disjoint(f).verdict == "Disjoint"
    cert = ind_disjoint(control_map())
    assert cert.verdict == "Overlap"
    assert hausdorff(_pairs(cert.overlaps), [(0j, 0j), (None, None)]) < TOL


def test_disjointness_needs_inverse():
    with pytest.raises(ValueError):
        ind_disjoint(SurfaceMap.from_fractions(BiPoly.y(), BiPoly.const(1), BiPoly.y(), BiPoly.x()))


def _conj(c):
    return None if c is None else complex(c).conjugate()


small_maps = st.tuples(bipolys(2, 3), bipolys(2, 3), bipolys(2, 3), bipolys(2, 3))


@settings(max_examples=40)
@given(small_maps)
def test_ind_closed_under_conjugation(m):
    try:
        f = SurfaceMap.from_fractions(*m)
        pts = _pairs(indeterminacy_set(f).points)
    except (ZeroDivisionError, PositiveDimensionalLocus):
        assume(False)
    conj = [(_conj(a), _conj(b)) for a, b in pts]
    assert hausdorff(pts, conj) < 1e-8


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_family_ind_conjugation_symmetric(n, d):
    f = build_fn_theta(HermanFamilyParams(n, d, Fraction(1, 3), Fraction(-2, 7)))
    for g in (f, f.inverse):
        pts = _pairs(indeterminacy_set(g).points)
        assert hausdorff(pts, [(_conj(a), _conj(b)) for a, b in pts]) < 1e-8
