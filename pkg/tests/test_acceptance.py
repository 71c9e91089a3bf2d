"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every test records one ``criterion N: PASS|FAIL`` line, printed as it runs
(visible with ``-s``) and again in the terminal summary.
"""
import json
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from biratio.cli.main import run_command
from biratio.constructions.closed_forms import compare_closed_form, family_closed_forms, pn_closed_form
from biratio.constructions.family import HermanFamilyParams, build_fn_theta, build_gn, build_rotation
from biratio.core.degrees import (bidegree_matrix, deg_ample, deg_ample_matrix, family_ample_class,
                                  family_lambda, family_matrix)
from biratio.core.indeterminacy import hausdorff, ind_disjoint, indeterminacy_set
from biratio.core.maps import compose
from biratio.dynamics.diophantine import diophantine_check
from biratio.dynamics.fixed_points import fixed_point_census
from biratio.dynamics.probe import complex_probe
from biratio.dynamics.torus import sup_distance

from conftest import ACCEPTANCE_LINES
from test_maps_degrees import control_map

T = (Fraction(1, 3), Fraction(2, 5))


@contextmanager
def criterion(num: int, title: str, budget: float):
    start = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = elapsed < budget
        note = f"{elapsed:.2f}s of {budget:g}s"
    except BaseException as exc:
        note = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        raise
    finally:
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title} ({note})"
        ACCEPTANCE_LINES[num] = line
        print("\n" + line)
    assert ok, f"criterion {num} over its time budget: {note}"


def _random_grid():
    rng = random.Random(20240611)
    pairs = [(Fraction(rng.randint(-40, 40), rng.randint(1, 15)),
              Fraction(rng.randint(-40, 40), rng.randint(1, 15))) for _ in range(5)]
    return [HermanFamilyParams(n, 1, *t) for n in (2, 3) for t in pairs]


GRID = _random_grid()


def _xie(tmp_path, d):
    out = tmp_path / f"xie{d}.json"
    t0 = time.perf_counter()
    code = run_command(["--out", str(out), "xie", "--d", str(d), "--matrix-only"])
    return code, json.loads(out.read_text()), time.perf_counter() - t0


def test_criterion_01_xie_threshold(tmp_path):
    with criterion(1, "Xie threshold: d=16552 certified, d=16551 Inconclusive", 2.0):
        code, yes, t_yes = _xie(tmp_path, 16552)
        assert code == 0 and yes["verdict"] == "lambda_lower_bound > 1"
        code, no, t_no = _xie(tmp_path, 16551)
        assert code == 0 and no["verdict"] == "Inconclusive"
        assert t_yes < 1 and t_no < 1, (t_yes, t_no)


def test_criterion_02_bidegree_matrix():
    with criterion(2, "bidegree(g_n) = [[2d,1],[1,0]] for n in 2..4, d in 1..3", 1.0):
        for n in (2, 3, 4):
            for d in (1, 2, 3):
                assert bidegree_matrix(build_gn(n, d)).as_list() == [[2 * d, 1], [1, 0]]


def test_criterion_03_stability():
    with criterion(3, "bidegree(f) = A^2 and bidegree(f o f) = A^4 by composition, d=1", 60.0):
        A = family_matrix(1)
        for p in GRID:
            f = build_fn_theta(p)
            assert bidegree_matrix(f) == A ** 2, p
            assert bidegree_matrix(compose(f, f)) == A ** 4, p


def test_criterion_04_disjointness():
    with criterion(4, "Ind(f) and Ind(f^-1) disjoint on the grid; overlap found for (y, y/x)", 120.0):
        for p in GRID:
            cert = ind_disjoint(build_fn_theta(p))
            assert cert.disjoint and cert.verdict == "Disjoint", p
        cert = ind_disjoint(control_map())
        assert cert.verdict == "Overlap" and len(cert.overlaps) == 2


def test_criterion_05_degree_identities():
    with criterion(5, "deg_L(f)=2 lambda^3, deg_L(f^2)=2 lambda^5, L^2=2 lambda", 1.0):
        for d in (1, 2, 3, 16552):
            lam, L, A = family_lambda(d), family_ample_class(d), family_matrix(d)
            assert L.self_intersection() == 2 * lam
            assert deg_ample_matrix(A ** 2, L) == 2 * lam ** 3
            assert deg_ample_matrix(A ** 4, L) == 2 * lam ** 5
        # the same identity read off the built map rather than the matrix
        for d in (1, 2, 3):
            f = build_fn_theta(HermanFamilyParams(2, d, *T))
            assert deg_ample(f, family_ample_class(d)) == 2 * family_lambda(d) ** 3


def test_criterion_06_closed_forms():
    with criterion(6, "Ind(g_n) poles within 1e-10; Z_n report names the matching form", 10.0):
        for n in (2, 3, 4):
            for d in (1, 2, 3):
                p = HermanFamilyParams(n, d)
                pts = indeterminacy_set(build_gn(n, d)).points
                poles = [(q.x, q.y) for q in pts if q.y == 0]
                assert hausdorff(poles, [(z, 0) for z in pn_closed_form(d)]) < 1e-10
                preds = {c: family_closed_forms(p, c, kind="g")[0] for c in ("shifted", "unshifted")}
                rep = compare_closed_form("Ind(g_n)", pts, preds, tol=1e-10)
                assert rep.matching == ["shifted"], (n, d, rep.comparisons)
                assert rep.comparisons["unshifted"].discrepancies


def test_criterion_07_convergence():
    with criterion(7, "sup distance to R_alpha on 256^2 falls with ratios in [3, 30]", 60.0):
        R = build_rotation(*T)
        dist = [sup_distance(build_fn_theta(HermanFamilyParams(n, 1, *T)), R, 256) for n in (10, 100, 1000)]
        for a, b in zip(dist, dist[1:]):
            assert a > b and 3 <= a / b <= 30, dist


def test_criterion_08_lefschetz():
    with criterion(8, "no fixed points for f_{2,theta} (chi = 0); identity factor flagged", 60.0):
        c = fixed_point_census(build_fn_theta(HermanFamilyParams(2, 1, *T)), tol=1e-6)
        assert c.isolated_count == 0 and c.lefschetz_consistent and not c.degenerate_identity
        for q in (Fraction(1), Fraction(3, 7)):
            assert fixed_point_census(build_rotation(0, q), tol=1e-6).degenerate_identity


def test_criterion_09_diophantine():
    with criterion(9, "C_emp > 0 for 2 pi (sqrt2-1, sqrt3-1); exact 0 on resonant controls", 30.0):
        alpha = (2 * math.pi * (math.sqrt(2) - 1), 2 * math.pi * (math.sqrt(3) - 1))
        r = diophantine_check(alpha, 2, 100)
        assert r.C_emp > 0 and not r.resonant
        equal = diophantine_check((1.234, 1.234), 2, 100)
        assert equal.C_emp == 0.0 and equal.argmin == (1, -1, 0)
        half = diophantine_check((math.pi, math.pi), 2, 100)
        assert half.C_emp == 0.0 and half.argmin == (1, 1, -1)


def test_criterion_10_probe():
    with criterion(10, "probe f_{1000,alpha}: offset 1e-3 bounded, offset 10 escapes", 120.0):
        f = build_fn_theta(HermanFamilyParams(1000, 1, *T))
        near = complex_probe(f, 1e-3, 100, 10_000)
        assert near.verdict == "bounded", near.max_drift
        far = complex_probe(f, 10.0, 100, 10_000)
        assert far.verdict == "unbounded-or-Ind-approach"
