"""End-to-end verification pipeline for a member f_{n,theta} of the family.

Every stage records its own verdict; an exception in one stage is captured
in the report and the remaining stages still run.
"""
from __future__ import annotations

import math
import time

import numpy as np
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..core.degrees import (bidegree_matrix, deg_ample, family_ample_class, family_matrix,
                            xie_family_matrix_only, xie_lower_bound)
from ..core.indeterminacy import ind_disjoint, indeterminacy_set
from ..core.maps import max_degree_cap
from .closed_forms import (ZN_CANDIDATES, _ext, compare_closed_form, family_closed_forms, min_separation,
                           pn_stable_under_minus_inverse, rotation_orbit_check,
                           zn_stable_under_minus_inverse)
from .family import HermanFamilyParams, build_Fn, build_fn_theta

SYMBOLIC_MAX_D = 3
# f o f is composed symbolically only while its predicted bidegree stays this small
SYMBOLIC_F2_MAX_DEGREE = 64


@dataclass
class StageResult:
    name: str
    ok: Optional[bool]
    verdict: str
    details: dict = field(default_factory=dict)
    error: Optional[str] = None
    seconds: float = 0.0


@dataclass
class TheoremReport:
    params: HermanFamilyParams
    stages: list = field(default_factory=list)

    def stage(self, name: str) -> StageResult:
        return next(s for s in self.stages if s.name == name)

    @property
    def passed(self) -> bool:
        return all(s.ok is not False for s in self.stages)


def _run_stage(report: TheoremReport, name: str, fn: Callable[[], StageResult]) -> StageResult:
    t0 = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # recorded, never fatal
        res = StageResult(name, False, "error", error=f"{type(exc).__name__}: {exc}")
    res.name = name
    res.seconds = time.perf_counter() - t0
    report.stages.append(res)
    return res


def verify_theorem(params: HermanFamilyParams, symbolic_max_d: int = SYMBOLIC_MAX_D,
                   alpha: Optional[tuple[float, float]] = None, beta: float = 2.0,
                   kmax: int = 100) -> TheoremReport:
    """Run every check on ``f_{n,theta}``.

    Up to ``symbolic_max_d`` the indeterminacy sets are computed by exact
    elimination; beyond it the closed forms are used and disjointness is a
    numeric separation of the two closed-form sets.
    """
    rep = TheoremReport(params)
    n, d = params.n, params.d
    symbolic = d <= symbolic_max_d
    state: dict = {}

    def fn_stage():
        r = build_Fn(n, d, strict=False)
        ok = r.ok
        return StageResult("F_n", ok, "simple, coprime, no real zeros or poles" if ok else "violation",
                           {"coprime": r.coprime, "simple_zeros": r.simple_zeros,
                            "simple_poles": r.simple_poles, "real_zeros": r.real_zeros,
                            "real_poles": r.real_poles})

    _run_stage(rep, "F_n", fn_stage)

    def build_stage():
        f = build_fn_theta(params)
        state["f"] = f
        return StageResult("build", True, "f = R_theta o g_n^2 built",
                           {"bidegree": bidegree_matrix(f).as_list(),
                            "expected_A2": (family_matrix(d) ** 2).as_list()})

    if symbolic:
        _run_stage(rep, "build", build_stage)

    def closed_form_stage():
        preds = {c: family_closed_forms(params, c) for c in ZN_CANDIDATES}
        if symbolic and "f" in state:
            f = state["f"]
            ind = indeterminacy_set(f)
            ind_inv = indeterminacy_set(f.inverse)
            state["ind"], state["ind_inv"] = ind.points, ind_inv.points
            reports = [compare_closed_form("Ind(f)", ind.points, {c: p[0] for c, p in preds.items()}),
                       compare_closed_form("Ind(f^-1)", ind_inv.points, {c: p[1] for c, p in preds.items()})]
            matching = sorted(set(reports[0].matching) & set(reports[1].matching))
            details = {
                "counts": {"Ind(f)": ind.count, "Ind(f^-1)": ind_inv.count},
                "hausdorff": {r.label: {c: cmp.distance for c, cmp in r.comparisons.items()} for r in reports},
                "matching_zn_closed_form": matching,
                "discrepancies": {r.label: {c: cmp.discrepancies[:8] for c, cmp in r.comparisons.items()
                                            if cmp.discrepancies} for r in reports},
            }
            return StageResult("closed_forms", bool(matching),
                               f"matches the {' and '.join(matching)} Z_n closed form" if matching
                               else "no closed form matches", details)
        # large d: the shifted closed form (roots of F_n, checked in the F_n stage) is the point set
        state["products"] = preds["shifted"]
        return StageResult("closed_forms", None, "closed forms used (no symbolic computation)",
                           {"counts": {"Ind(f)": sum(map(len, preds["shifted"][0])),
                                       "Ind(f^-1)": sum(map(len, preds["shifted"][1]))}})

    _run_stage(rep, "closed_forms", closed_form_stage)

    def disjoint_stage():
        if symbolic and "f" in state:
            cert = ind_disjoint(state["f"])
            state["stability"] = "Ind(f) and Ind(f^-1) disjoint, certified by exact elimination over Q"
            if not cert.disjoint:
                state["stability"] = None
            return StageResult("disjointness", cert.disjoint, cert.verdict,
                               {"method": cert.method, "checks": cert.checks,
                                "overlaps": [[_pt(p.x), _pt(p.y)] for p in cert.overlaps]})
        sep = min_separation(*state["products"])
        ok = sep > 1e-6
        state["stability"] = ("Ind(f) and Ind(f^-1) disjoint by numeric separation of the closed-form sets"
                              if ok else None)
        return StageResult("disjointness", ok, "Disjoint" if ok else "Overlap",
                           {"method": "closed-form sets, numeric separation",
                            "min_separation_lower_bound": sep})

    _run_stage(rep, "disjointness", disjoint_stage)

    def real_stage():
        if "products" in state:
            # a product is real somewhere iff both factors contain a real value
            real, count = [], 0
            for comp in state["products"][0] + state["products"][1]:
                count += len(comp)
                rx = [z for z in comp.xs if not np.isfinite(z) or abs(z.imag) <= 1e-12]
                ry = [z for z in comp.ys if not np.isfinite(z) or abs(z.imag) <= 1e-12]
                real += [(_ext(a), _ext(b)) for a in rx for b in ry]
        else:
            pts = _as_pairs(state["ind"]) + _as_pairs(state["ind_inv"])
            radii = _radii(state["ind"]) + _radii(state["ind_inv"])
            count = len(pts)
            real = [p for p, r in zip(pts, radii) if all(c is None or abs(complex(c).imag) <= r for c in p)]
        return StageResult("realness", not real, "no real indeterminacy points" if not real else "real point found",
                           {"points_checked": count, "real_points": [[_pt(a), _pt(b)] for a, b in real]})

    _run_stage(rep, "realness", real_stage)

    def xie_stage():
        basis = state.get("stability") or "assumed by caller (no disjointness certificate)"
        matrix = xie_family_matrix_only(d, basis)
        details = {"method": matrix.method, "stability_basis": basis,
                   "deg_L(f)": str(matrix.deg_f), "deg_L(f^2)": str(matrix.deg_f2),
                   "ratio": str(matrix.ratio), "lower_bound": matrix.lower_bound,
                   "enclosure": list(matrix.enclosure) if matrix.enclosure else None,
                   "checks": matrix.checks}
        f2_degree = max(max(r) for r in (family_matrix(d) ** 4).rows)
        if "f" in state and f2_degree <= min(SYMBOLIC_F2_MAX_DEGREE, max_degree_cap()):
            L = family_ample_class(d)
            exact = xie_lower_bound(state["f"], L)
            details["symbolic_cross_check"] = {
                "deg_L(f^2)": str(exact.deg_f2),
                "agrees_with_matrix_path": exact.deg_f2 == matrix.deg_f2 and exact.certified == matrix.certified,
                "deg_L(f)": str(deg_ample(state["f"], L)),
            }
        ok = all(matrix.checks[k] for k in ("deg_L(f) == 2*lambda^3", "deg_L(f^2) == 2*lambda^5",
                                              "L^2 == 2*lambda", "lambda^2 == 2*d*lambda + 1"))
        ok = ok and details.get("symbolic_cross_check", {}).get("agrees_with_matrix_path", True)
        return StageResult("xie", ok, matrix.verdict, details)

    _run_stage(rep, "xie", xie_stage)

    def orbit_stage():
        chk = rotation_orbit_check()
        return StageResult("rotation_orbits", chk.ok and chk.fixed_points_ok,
                           "orbits meet the unit circle only at x and -1/x; +-i fixed",
                           {"samples": chk.samples, "max_error": chk.max_error,
                            "fixed_points_ok": chk.fixed_points_ok})

    _run_stage(rep, "rotation_orbits", orbit_stage)

    def pn_stage():
        ok = pn_stable_under_minus_inverse(d)
        return StageResult("pn_stability", ok, "P_n stable under x -> -1/x (exact)" if ok else "not stable",
                           {"zn_stable": zn_stable_under_minus_inverse(n, d)})

    _run_stage(rep, "pn_stability", pn_stage)

    if alpha is not None:
        def dioph_stage():
            from ..dynamics.diophantine import diophantine_check
            r = diophantine_check(alpha, beta, kmax)
            eps = max(abs(math.pi - alpha[0]), abs(math.pi - alpha[1]))
            return StageResult("diophantine", None, "recorded (hypothesis check only)",
                               {"alpha": list(alpha), "beta": beta, "K_max": kmax,
                                "C_emp": r.C_emp, "argmin": list(r.argmin), "epsilon": eps})

        _run_stage(rep, "diophantine", dioph_stage)
    return rep


def _as_pairs(points) -> list:
    return [(p.x, p.y) if hasattr(p, "x") else p for p in points]


def _radii(points) -> list:
    return [getattr(p, "radius", 1e-12) for p in points]


def _pt(c):
    return "inf" if c is None else [complex(c).real, complex(c).imag]
