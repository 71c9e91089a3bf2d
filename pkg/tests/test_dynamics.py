import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from biratio.algebra.bipoly import BiPoly
from biratio.algebra.scalars import GaussRational
from biratio.constructions.family import HermanFamilyParams, build_fn_theta, build_gn, build_rotation
from biratio.core.maps import SurfaceMap, compose, iterate
from biratio.dynamics.diophantine import combination, diophantine_check
from biratio.dynamics.fixed_points import fixed_point_census
from biratio.dynamics.probe import complex_probe
from biratio.dynamics.torus import (TorusPoint, cayley, cayley_inverse, orbit, rotation_angles,
                                    rotation_vector, sup_distance)
from biratio.errors import SingularityApproach

from test_maps_degrees import control_map

T = (Fraction(1, 3), Fraction(2, 5))
ALPHA = rotation_angles(*T)


def family(n, d=1, t=T):
    return build_fn_theta(HermanFamilyParams(n, d, *t))


# --- chart and orbits -------------------------------------------------------------

@given(st.floats(-50, 50))
def test_cayley_round_trip(x):
    w = cayley(x)
    assert abs(abs(w) - 1) < 1e-12
    assert abs(cayley_inverse(w) - x) <= 1e-9 * max(1.0, x * x)


def test_cayley_infinity():
    assert cayley(None) == 1 and cayley_inverse(1) is None


def test_rotation_orbit_rotation_vector():
    rv = rotation_vector(orbit(build_rotation(*T), TorusPoint(1.0, 2.0), 1000))
    assert np.allclose(rv.rho, ALPHA, atol=1e-12)


def test_fixed_point_orbit_has_zero_rotation():
    rv = rotation_vector(orbit(SurfaceMap.identity(), TorusPoint(0.5, 0.7), 200))
    assert rv.rho == (0.0, 0.0)


def test_rotation_vector_approaches_alpha():
    errs = []
    for n in (100, 1000, 10000):
        rv = rotation_vector(orbit(family(n), TorusPoint(0.3, 1.1), 4000))
        errs.append(float(np.max(np.abs(np.array(rv.rho) - ALPHA))))
    assert errs[0] > errs[1] > errs[2]


def test_singularity_guard():
    # (0, 0) is an indeterminacy point of the control map and lies on the real torus at phi = pi
    with pytest.raises(SingularityApproach) as exc:
        orbit(control_map(), TorusPoint(math.pi, math.pi), 10)
    assert exc.value.step == 0


def test_reality_invariance_exact():
    f = family(2)
    rng = random.Random(5)
    for _ in range(10):
        pt = (GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9))),
              GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9))))
        for _ in range(5):
            try:
                pt = f(*pt)
            except ZeroDivisionError:
                break  # a real point mapped to infinity; the chart stops here
            assert all(GaussRational._coerce(c).im == 0 for c in pt)


def test_lift_consistency_under_doubled_sampling():
    f = family(2)
    f2 = compose(f, f)
    seed = TorusPoint(0.4, 2.5)
    fine = orbit(f, seed, 400)
    coarse = orbit(f2, seed, 200)
    assert np.max(np.abs(fine.lifts[::2] - coarse.lifts)) < 1e-8


# --- uniform distance to the rotation -----------------------------------------------------

def test_sup_distance_self_is_zero():
    f = family(10)
    assert sup_distance(f, f, 32) == 0.0


def test_gn_approaches_swap():
    d = [sup_distance(build_gn(n, 1), SurfaceMap.swap(), 64) for n in (10, 100, 1000)]
    assert d[0] > d[1] > d[2]
    for a, b in zip(d, d[1:]):
        assert 10 / 3 <= a / b <= 30


def test_fn_alpha_close_to_rotation():
    assert sup_distance(family(1000), build_rotation(*T), 256) < 0.05


def test_sup_distance_nonincreasing_ladder():
    R = build_rotation(*T)
    d = [sup_distance(family(n), R, 128) for n in (10, 100, 1000, 10000)]
    assert all(a >= b for a, b in zip(d, d[1:]))


# --- fixed points -----------------------------------------------------------------

def test_irrational_rotation_has_no_fixed_points():
    c = fixed_point_census(build_rotation(*T))
    assert c.isolated_count == 0 and not c.degenerate_identity


def test_family_member_has_no_fixed_points():
    for t in (T, (Fraction(-2, 7), Fraction(5, 3))):
        c = fixed_point_census(family(2, t=t))
        assert c.isolated_count == 0 and c.lefschetz_consistent


def test_identity_factor_is_degenerate():
    for q in (Fraction(1), Fraction(1, 2)):
        c = fixed_point_census(build_rotation(0, q))
        assert c.degenerate_identity and c.identity_components == (1,)


def test_finite_order_rotation():
    R = build_rotation(1, -1)  # quarter turns in both factors
    assert fixed_point_census(R).isolated_count == 0
    c4 = fixed_point_census(iterate(R, 4))
    assert c4.degenerate_identity and c4.identity_components == (1, 2)


def test_hyperbolic_fixed_points_index_sum():
    x, y, one = BiPoly.x(), BiPoly.y(), BiPoly.const(1)
    c = fixed_point_census(SurfaceMap.from_fractions(2 * x, one, 2 * y, one))
    assert c.isolated_count == 4
    assert sorted(p.index for p in c.isolated) == [-1, -1, 1, 1]
    assert c.lefschetz_consistent


# --- Diophantine check ------------------------------------------------------------

GOLDEN = (2 * math.pi * (math.sqrt(2) - 1), 2 * math.pi * (math.sqrt(3) - 1))


def _brute(alpha, beta, K):
    best = math.inf
    for k1 in range(-K, K + 1):
        for k2 in range(-K, K + 1):
            for k3 in range(-K, K + 1):
                norm = max(abs(k1), abs(k2), abs(k3))
                if norm:
                    best = min(best, abs(combination(alpha, (k1, k2, k3))) * norm ** beta)
    return best


# frozen from an independent pure-Python triple loop at K = 100 (the two scans agree to 4e-13)
C_EMP_K100 = 0.11450443273304245  # pure-Python scan, argmin -(5, 4, -5)


def test_diophantine_example():
    r = diophantine_check(GOLDEN, 2, 100)
    assert r.C_emp > 0 and not r.resonant
    assert r.C_emp == pytest.approx(C_EMP_K100, rel=1e-10) and r.argmin == (5, 4, -5)
    small = diophantine_check(GOLDEN, 2, 25)
    assert small.C_emp == pytest.approx(_brute(GOLDEN, 2, 25), rel=1e-12)


def test_resonant_controls():
    r = diophantine_check((math.pi, math.pi), 2, 100)
    assert r.C_emp == 0.0 and r.argmin == (1, 1, -1)
    assert (1, -1, 0) in r.resonances
    s = diophantine_check((1.234, 1.234), 2, 50)
    assert s.C_emp == 0.0 and s.argmin == (1, -1, 0)


@settings(max_examples=25)
@given(st.floats(0.1, 6.2), st.floats(0.1, 6.2), st.integers(1, 15), st.integers(1, 15))
def test_diophantine_monotone_in_range(a1, a2, k, extra):
    small = diophantine_check((a1, a2), 2, k)
    large = diophantine_check((a1, a2), 2, k + extra)
    assert small.C_emp >= large.C_emp


# --- probe -------------------------------------------------------------------------

def test_probe_real_seeds_stay_real():
    r = complex_probe(family(1000), 0.0, 10, 200)
    assert r.all_bounded and r.max_drift < 1e-9


def test_probe_near_real_bounded():
    r = complex_probe(family(1000), 1e-3, 20, 1000)
    assert r.verdict == "bounded" and r.max_drift < 0.1


def test_probe_far_from_real_escapes():
    r = complex_probe(family(1000), 10.0, 20, 1000)
    assert r.verdict == "unbounded-or-Ind-approach"
    assert r.trace and len(r.trace[0]) == 4
