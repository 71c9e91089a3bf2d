"""``biratio`` command line: exact checks, simulations and reports.

Exit codes: 0 success, 2 when the command's check comes out negative
(an overlap, a failed stage, an unbounded probe, a resonance), 1 on errors
including usage errors.
"""
from __future__ import annotations

import argparse
import ast
import math
import operator
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from ..errors import BiratioError
from . import report as rp
from .expr import parse_map, print_map

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# --- argument helpers ------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _rational_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated rationals, got {text!r}")
    return _rational(parts[0]), _rational(parts[1])


def _family(text: str):
    """``n,d`` or ``n,d,t1,t2`` with rational t."""
    from ..constructions.family import HermanFamilyParams
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 4):
        raise argparse.ArgumentTypeError(f"--family expects n,d or n,d,t1,t2, got {text!r}")
    try:
        n, d = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"n and d must be integers in {text!r}")
    t1, t2 = (_rational(parts[2]), _rational(parts[3])) if len(parts) == 4 else (0, 0)
    try:
        return HermanFamilyParams(n, d, t1, t2)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt}


def real_expression(text: str) -> float:
    """A float from a small arithmetic expression (numbers, pi, e, sqrt, + - * / **)."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS
                and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError("unsupported element")

    try:
        return float(ev(ast.parse(text.strip().replace("^", "**"), mode="eval")))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError):
        raise argparse.ArgumentTypeError(f"not a real expression: {text!r}")


def _real_pair(text: str) -> tuple[float, float]:
    depth, cut = 0, None
    for k, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "," and depth == 0:
            if cut is not None:
                cut = -1
                break
            cut = k
    if cut is None or cut < 0:
        raise argparse.ArgumentTypeError(f"expected two comma-separated reals, got {text!r}")
    return real_expression(text[:cut]), real_expression(text[cut + 1:])


def _read_map_arg(value: str):
    text = value
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    return parse_map(text)


def _add_map_source(p: argparse.ArgumentParser, rotation: bool = True):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help="map literal \"(expr1, expr2)\" or a file containing one")
    g.add_argument("--family", type=_family, metavar="N,D[,T1,T2]",
                   help="member f_{n,theta} of the family, t_j = tan(theta_j / 2)")
    if rotation:
        g.add_argument("--rotation", type=_rational_pair, metavar="T1,T2",
                       help="the rotation R_theta, t_j = tan(theta_j / 2)")
    p.add_argument("--inverse", help="inverse map (literal or file) when --map is used")


def _load_map(args, need_inverse: bool = False):
    """The map named on the command line and a description for the report."""
    from ..constructions.family import build_fn_theta, build_rotation
    if getattr(args, "family", None) is not None:
        params = args.family
        f = build_fn_theta(params)
        return f, {"family": _params_dict(params)}
    if getattr(args, "rotation", None) is not None:
        t1, t2 = args.rotation
        return build_rotation(t1, t2), {"rotation": {"t1": t1, "t2": t2}}
    f = _read_map_arg(args.map)
    desc = {"map": print_map(f)}
    if args.inverse:
        f.with_inverse(_read_map_arg(args.inverse))
        desc["inverse"] = print_map(f.inverse)
    elif need_inverse:
        raise BiratioError("this command needs --inverse together with --map")
    return f, desc


def _params_dict(params) -> dict:
    return {"n": params.n, "d": params.d, "t1": params.t1, "t2": params.t2}


# --- subcommands -----------------------------------------------------------------

def cmd_verify(args) -> rp.RunReport:
    from ..constructions.family import HermanFamilyParams
    from ..constructions.theorem import verify_theorem
    params = HermanFamilyParams(args.n, args.d, args.t1, args.t2)
    res = verify_theorem(params, symbolic_max_d=args.symbolic_max_d, alpha=args.alpha,
                         beta=args.beta, kmax=args.kmax)
    stages = [rp.Stage(s.name, s.ok, s.verdict, s.details, s.error) for s in res.stages]
    verdict = "all checks passed" if res.passed else "check failed: " + ", ".join(
        s.name for s in res.stages if s.ok is False)
    out = rp.RunReport("verify", {**_params_dict(params), "symbolic_max_d": args.symbolic_max_d,
                                  "alpha": args.alpha, "beta": args.beta, "kmax": args.kmax},
                       verdict, EXIT_OK if res.passed else EXIT_VERDICT, stages,
                       timings={s.name: s.seconds for s in res.stages})
    if args.csv_dir:
        from ..constructions.family import build_fn_theta
        from ..dynamics.torus import TorusPoint, orbit
        if params.d <= args.symbolic_max_d:
            rec = orbit(build_fn_theta(params), TorusPoint(1.0, 2.0), args.csv_steps)
            rp.write_text(rp.orbit_csv(rec), os.path.join(rp.ensure_dir(args.csv_dir), "orbit.csv"))
            out.result["csv"] = ["orbit.csv"]
    return out


def cmd_xie(args) -> rp.RunReport:
    from ..core.degrees import family_ample_class, xie_family_matrix_only, xie_lower_bound
    if args.matrix_only:
        v = xie_family_matrix_only(args.d, "assumed: Ind(f) and Ind(f^-1) disjoint (see verify/ind)")
    else:
        from ..constructions.family import HermanFamilyParams, build_fn_theta
        f = build_fn_theta(HermanFamilyParams(args.n, args.d, args.t1, args.t2))
        v = xie_lower_bound(f, family_ample_class(args.d))
    result = {"certified": v.certified, "deg_L(f)": v.deg_f, "deg_L(f^2)": v.deg_f2,
              "ratio": v.ratio, "lower_bound": v.lower_bound, "enclosure": v.enclosure,
              "method": v.method, "stability_basis": v.stability_basis, "checks": v.checks,
              "constant": "C = 2^(3/2) * 3^18"}
    params = {"d": args.d, "matrix_only": args.matrix_only}
    if not args.matrix_only:
        params.update(n=args.n, t1=args.t1, t2=args.t2)
    return rp.RunReport("xie", params, v.verdict, EXIT_OK,
                        [rp.Stage("xie", v.certified or None, v.verdict, {"method": v.method})], result)


def _ind_points(points) -> list:
    return [{"x": _ext(p.x), "y": _ext(p.y), "stratum": p.stratum, "radius": p.radius} for p in points]


def _ext(c):
    return "inf" if c is None else c


def cmd_ind(args) -> rp.RunReport:
    from ..core.indeterminacy import ind_disjoint, indeterminacy_set
    f, desc = _load_map(args)
    ind = indeterminacy_set(f)
    result = {"Ind(f)": {"count": ind.count, "points": _ind_points(ind.points)}}
    stages = [rp.Stage("Ind(f)", None, f"{ind.count} points")]
    verdict, code = f"{ind.count} indeterminacy points (no inverse, disjointness not tested)", EXIT_OK
    if f.inverse is not None:
        inv = indeterminacy_set(f.inverse)
        result["Ind(f^-1)"] = {"count": inv.count, "points": _ind_points(inv.points)}
        cert = ind_disjoint(f)
        result["certificate"] = {"verdict": cert.verdict, "method": cert.method, "checks": cert.checks,
                                 "overlaps": _ind_points(cert.overlaps)}
        stages.append(rp.Stage("disjointness", cert.disjoint, cert.verdict,
                               {"overlaps": _ind_points(cert.overlaps)}))
        verdict = cert.verdict
        code = EXIT_OK if cert.disjoint else EXIT_VERDICT
    return rp.RunReport("ind", desc, verdict, code, stages, result)


def cmd_degrees(args) -> rp.RunReport:
    from ..core.degrees import degree_sequence
    f, desc = _load_map(args)
    seq = degree_sequence(f, args.iters)
    result = {"bidegree_matrices": [m.as_list() for m in seq.matrices],
              "norm_root_estimates": seq.estimates}
    return rp.RunReport("degrees", {**desc, "iters": args.iters},
                        f"lambda estimate {rp.format_float(seq.estimate)}", EXIT_OK, [], result)


def cmd_orbit(args) -> rp.RunReport:
    from ..dynamics.torus import TorusPoint, orbit, rotation_vector
    f, desc = _load_map(args)
    rec = orbit(f, TorusPoint(*args.seed), args.steps)
    result = {"final_angles": rec.angles[-1], "final_lifts": rec.lifts[-1],
              "min_singularity_measure": rec.min_singularity}
    if args.steps >= 100:
        rv = rotation_vector(rec)
        result["rotation_vector"] = {"rho": rv.rho, "error": rv.error}
    if args.csv:
        rp.write_text(rp.orbit_csv(rec), args.csv)
        result["csv"] = os.path.basename(args.csv)
    return rp.RunReport("orbit", {**desc, "seed": args.seed, "steps": args.steps},
                        f"{args.steps} steps completed", EXIT_OK, [], result)


def cmd_fixed_points(args) -> rp.RunReport:
    from ..dynamics.fixed_points import fixed_point_census
    f, desc = _load_map(args)
    c = fixed_point_census(f, grid=args.grid, tol=args.tol)
    pts = [{"phi": [p.location.phi1, p.location.phi2], "residual": p.residual, "det": p.det,
            "index": p.index, "classification": p.classification} for p in c.points]
    result = {"isolated_count": c.isolated_count, "index_sum": c.index_sum,
              "euler_characteristic": 0, "lefschetz_consistent": c.lefschetz_consistent,
              "degenerate_identity": c.degenerate_identity,
              "identity_components": list(c.identity_components),
              "nonconvergent_seeds": c.nonconvergent, "seeds": c.seeds, "points": pts, "notes": c.notes,
              "positive_det_violations": len(c.positive_det_violations)}
    if c.degenerate_identity:
        verdict, code = "degenerate: f - id vanishes identically in some coordinate", EXIT_OK
    elif c.lefschetz_consistent:
        verdict, code = f"{c.isolated_count} isolated fixed points, index sum 0 = chi(T^2)", EXIT_OK
    else:
        verdict, code = f"index sum {c.index_sum} != chi(T^2) = 0", EXIT_VERDICT
    return rp.RunReport("fixed-points", {**desc, "grid": args.grid, "tol": args.tol}, verdict, code,
                        [], result)


def cmd_dioph(args) -> rp.RunReport:
    from ..dynamics.diophantine import diophantine_check
    r = diophantine_check(args.alpha, args.beta, args.kmax)
    result = {"C_emp": r.C_emp, "argmin": list(r.argmin), "resonant": r.resonant,
              "resonances": [list(k) for k in r.resonances]}
    verdict = "resonant: C_emp = 0" if r.resonant else f"C_emp = {rp.format_float(r.C_emp)} > 0"
    return rp.RunReport("dioph", {"alpha": list(args.alpha), "beta": args.beta, "kmax": args.kmax},
                        verdict, EXIT_VERDICT if r.resonant else EXIT_OK, [], result)


def cmd_probe(args) -> rp.RunReport:
    from ..dynamics.probe import complex_probe
    f, desc = _load_map(args, need_inverse=True)
    r = complex_probe(f, args.offset, args.seeds, args.steps, rng_seed=args.rng_seed)
    failures = [{"seed": s.seed, "reason": s.reason, "steps_completed": s.steps_completed}
                for s in r.seeds if not s.bounded]
    result = {"verdict": r.verdict, "label": r.label, "all_bounded": r.all_bounded,
              "max_drift": r.max_drift, "min_ind_distance": r.min_ind_distance,
              "unbounded_seeds": len(failures), "failures": failures[:20]}
    if args.csv:
        rp.write_text(rp.probe_csv(r), args.csv)
        result["csv"] = os.path.basename(args.csv)
    params = {**desc, "offset": args.offset, "seeds": args.seeds, "steps": args.steps,
              "rng_seed": args.rng_seed}
    return rp.RunReport("probe", params, r.verdict, EXIT_OK if r.all_bounded else EXIT_VERDICT, [], result)


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biratio", description=__doc__.splitlines()[0].replace("``", ""))
    p.add_argument("--version", action="version", version=f"%(prog)s {rp.__version__}")
    p.add_argument("--out", default="-", help="report JSON path (default: stdout)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="full check of f_{n,theta}")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--t1", type=_rational, default=Fraction(0))
    v.add_argument("--t2", type=_rational, default=Fraction(0))
    v.add_argument("--symbolic-max-d", type=int, default=3,
                   help="largest d handled by exact elimination (default 3)")
    v.add_argument("--alpha", type=_real_pair, help="angle pair for the Diophantine stage")
    v.add_argument("--beta", type=float, default=2.0)
    v.add_argument("--kmax", type=int, default=100)
    v.add_argument("--csv-dir", help="directory for the orbit CSV bundle")
    v.add_argument("--csv-steps", type=int, default=1000)
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("xie", help="dynamical degree lower bound")
    x.add_argument("--d", type=int, required=True)
    x.add_argument("--matrix-only", action="store_true", help="use the bidegree matrix, no composition")
    x.add_argument("--n", type=int, default=2)
    x.add_argument("--t1", type=_rational, default=Fraction(0))
    x.add_argument("--t2", type=_rational, default=Fraction(0))
    x.set_defaults(func=cmd_xie)

    i = sub.add_parser("ind", help="indeterminacy sets and disjointness certificate")
    _add_map_source(i)
    i.set_defaults(func=cmd_ind)

    g = sub.add_parser("degrees", help="bidegree matrices of the iterates")
    _add_map_source(g)
    g.add_argument("--iters", type=int, default=4)
    g.set_defaults(func=cmd_degrees)

    o = sub.add_parser("orbit", help="orbit on the real torus")
    _add_map_source(o)
    o.add_argument("--seed", type=_real_pair, required=True, metavar="PHI1,PHI2")
    o.add_argument("--steps", type=int, default=1000)
    o.add_argument("--csv", help="orbit CSV path")
    o.set_defaults(func=cmd_orbit)

    fp = sub.add_parser("fixed-points", help="fixed points on the real torus")
    _add_map_source(fp)
    fp.add_argument("--grid", type=int, default=32)
    fp.add_argument("--tol", type=float, default=1e-6)
    fp.set_defaults(func=cmd_fixed_points)

    dio = sub.add_parser("dioph", help="finite-range Diophantine check")
    dio.add_argument("--alpha", type=_real_pair, required=True, metavar="A1,A2",
                     help="angles; expressions with pi and sqrt allowed, e.g. 2*pi*(sqrt(2)-1)")
    dio.add_argument("--beta", type=float, default=2.0)
    dio.add_argument("--kmax", type=int, default=100)
    dio.set_defaults(func=cmd_dioph)

    pr = sub.add_parser("probe", help="heuristic off-real orbit probe")
    _add_map_source(pr)
    pr.add_argument("--offset", type=float, required=True)
    pr.add_argument("--seeds", type=int, default=100)
    pr.add_argument("--steps", type=int, default=10000)
    pr.add_argument("--rng-seed", type=int, default=0)
    pr.add_argument("--csv", help="probe CSV path (first seed)")
    pr.set_defaults(func=cmd_probe)
    return p


def run_command(argv: Optional[list] = None) -> int:
    """Parse ``argv``, run the subcommand, write the report; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    t0 = time.perf_counter()
    try:
        report = args.func(args)
        report.timings["total"] = time.perf_counter() - t0
        rp.write_text(report.to_json(), args.out)
    except (BiratioError, ValueError, ArithmeticError, OSError, MemoryError) as exc:
        print(f"biratio {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out not in (None, "-"):
        print(f"{report.command}: {report.verdict}")
    return report.exit_code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
