import json
import os
import random
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, strategies as st

from biratio.cli.expr import evaluate, parse_expr, parse_map, parse_map_ast, print_map, to_fraction
from biratio.cli.main import run_command
from biratio.cli.report import RunReport, Stage, dumps, exact_str, orbit_csv
from biratio.algebra.scalars import QuadExt
from biratio.constructions.family import HermanFamilyParams, build_fn_theta, build_gn, build_rotation
from biratio.core.degrees import bidegree_matrix
from biratio.core.maps import SurfaceMap
from biratio.dynamics.torus import TorusPoint, orbit
from biratio.errors import ParseError, ZeroDenominator

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report_schema.json").read_text())


# --- parser ---------------------------------------------------------------------------

def test_parse_examples():
    swap = parse_map("(y, x)")
    assert swap == SurfaceMap.swap()
    assert bidegree_matrix(swap).as_list() == [[0, 1], [1, 0]]
    assert parse_map("((x^2+x+1)*y/(x^2+1), x)") == build_gn(2, 1)
    with pytest.raises(ZeroDenominator):
        parse_map("(x/0, y)")


@pytest.mark.parametrize("text, pos", [("(x, sqrt(2))", 4), ("(x^-1, y)", 3), ("(x y)", 3),
                                       ("(x, y", 5), ("(x^2^3, y)", 4), ("(x, y) z", 7),
                                       ("(x, 3.5.2)", 7), ("(x, y & 1)", 6), ("(x, pi*y)", 4)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_map(text)
    assert exc.value.position == pos


def test_precedence():
    assert evaluate(parse_expr("-x^2"), Fraction(3), 0) == -9
    assert evaluate(parse_expr("2-3-4"), 0, 0) == -5
    assert evaluate(parse_expr("12/3/2"), 0, 0) == 2
    assert evaluate(parse_expr("2*x^3 + -y"), Fraction(2), Fraction(5)) == 11
    assert evaluate(parse_expr("(x+1)^2"), Fraction(1, 2), 0) == Fraction(9, 4)


def test_decimal_literals_are_exact():
    assert parse_map("(0.5*x, 1.25)") == parse_map("(x/2, 5/4)")


def test_input_size_limit():
    with pytest.raises(ParseError):
        parse_map("(" + "x+" * 600000 + "x, y)")


def _builder_maps():
    rng = random.Random(7)
    for n in (2, 3):
        for d in (1, 2, 3):
            t = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
            f = build_fn_theta(HermanFamilyParams(n, d, *t))
            yield from (build_gn(n, d), build_gn(n, d).inverse, f, f.inverse)
    yield build_rotation(Fraction(1, 3), Fraction(-2, 5))


def test_round_trip_builder_maps():
    for f in _builder_maps():
        assert parse_map(print_map(f)) == f


exprs = st.recursive(
    st.one_of(st.sampled_from(["x", "y"]), st.integers(0, 9).map(str),
              st.tuples(st.integers(1, 9), st.integers(1, 9)).map(lambda t: f"{t[0]}/{t[1]}")),
    lambda inner: st.one_of(
        st.tuples(inner, st.sampled_from("+-*"), inner).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        st.tuples(inner, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
        inner.map(lambda e: f"-{e}")),
    max_leaves=8)


@given(exprs, st.fractions(-5, 5), st.fractions(-5, 5))
def test_evaluation_agrees_with_polynomial_route(text, x, y):
    node = parse_expr(text)
    num, den = to_fraction(node)
    assert evaluate(node, x, y) * den(x, y) == num(x, y)


@given(exprs, exprs)
def test_parse_print_parse(a, b):
    try:
        f = parse_map(f"({a}, {b})")
    except ZeroDenominator:
        return
    assert parse_map(print_map(f)) == f


def test_map_ast_shape():
    first, second = parse_map_ast("(x, y)")
    assert (first.name, second.name) == ("x", "y")


# --- reports ----------------------------------------------------------------------------

def test_exact_strings_and_floats():
    assert exact_str(Fraction(-3, 4)) == "-3/4" and exact_str(Fraction(6, 3)) == "2"
    assert exact_str(QuadExt(2, 14, 10)) == "14+10*sqrt(2)"
    text = dumps({"b": 0.1, "a": [1, Fraction(1, 3)], "c": float("inf")})
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert "1.000000000000e-01" in text and '"1/3"' in text and '"inf"' in text
    json.loads(text)


def test_report_schema_and_timing_separation():
    rep = RunReport("xie", {"d": 3}, "Inconclusive", 0, [Stage("xie", None, "Inconclusive")],
                    {"x": 1.5}, timings={"total": 0.25})
    data = json.loads(rep.to_json())
    jsonschema.validate(data, SCHEMA)
    assert "timings" not in json.loads(rep.to_json(timings=False))


def test_orbit_csv_format():
    rec = orbit(build_rotation(Fraction(1, 3), 0), TorusPoint(1.0, 2.0), 3)
    lines = orbit_csv(rec).splitlines()
    assert lines[0] == "step,phi1,phi2,lift1,lift2"
    assert lines[1] == "0,1.000000000000e+00,2.000000000000e+00,1.000000000000e+00,2.000000000000e+00"
    assert len(lines) == 5


# --- command line -----------------------------------------------------------------------

def _run(tmp_path, *argv, name="r.json"):
    out = tmp_path / name
    code = run_command(["--out", str(out), *argv])
    data = json.loads(out.read_text()) if out.exists() else None
    if data is not None:
        jsonschema.validate(data, SCHEMA)
    return code, data


def test_cli_xie(tmp_path):
    code, data = _run(tmp_path, "xie", "--d", "16552", "--matrix-only")
    assert code == 0 and data["verdict"] == "lambda_lower_bound > 1"
    code, data = _run(tmp_path, "xie", "--d", "16551", "--matrix-only")
    assert code == 0 and data["verdict"] == "Inconclusive"


def test_cli_ind_overlap(tmp_path):
    code, data = _run(tmp_path, "ind", "--map", "(y, y/x)", "--inverse", "(x/y, x)")
    assert code == 2 and data["verdict"] == "Overlap"
    pts = {(json.dumps(p["x"]), json.dumps(p["y"])) for p in data["result"]["certificate"]["overlaps"]}
    assert pts == {('"inf"', '"inf"'), ("[0.0, 0.0]", "[0.0, 0.0]")}


def test_cli_ind_from_file(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("((x^2+x+1)*y/(x^2+1), x)\n")
    g = tmp_path / "ginv.txt"
    g.write_text("(y, x*(y^2+1)/(y^2+y+1))")
    code, data = _run(tmp_path, "ind", "--map", str(f), "--inverse", str(g))
    assert code == 0 and data["verdict"] == "Disjoint"


def test_cli_verify_deterministic(tmp_path):
    argv = ["verify", "--n", "2", "--d", "1", "--t1", "1/3", "--t2", "2/5", "--alpha",
            "2*pi*(sqrt(2)-1), 2*pi*(sqrt(3)-1)"]
    code1, a = _run(tmp_path, *argv, "--csv-dir", str(tmp_path / "bundle"), name="a.json")
    code2, b = _run(tmp_path, *argv, name="b.json")
    assert code1 == code2 == 0
    assert (tmp_path / "bundle" / "orbit.csv").exists()
    a.pop("timings"), b.pop("timings")
    a["result"].pop("csv")
    assert dumps(a) == dumps(b)


def test_cli_numeric_commands(tmp_path):
    code, data = _run(tmp_path, "dioph", "--alpha", "pi,pi")
    assert code == 2 and data["result"]["argmin"] == [1, 1, -1]
    code, data = _run(tmp_path, "fixed-points", "--rotation", "0,1/2")
    assert code == 0 and data["result"]["degenerate_identity"]
    csv = tmp_path / "o.csv"
    code, data = _run(tmp_path, "orbit", "--family", "2,1,1/3,2/5", "--seed", "1,2", "--steps", "150",
                      "--csv", str(csv))
    assert code == 0 and csv.read_text().startswith("step,phi1,phi2,lift1,lift2\n")
    code, data = _run(tmp_path, "degrees", "--family", "2,1", "--iters", "2")
    assert code == 0 and data["result"]["bidegree_matrices"][1] == [[29, 12], [12, 5]]
    pcsv = tmp_path / "p.csv"
    code, data = _run(tmp_path, "probe", "--family", "1000,1,1/3,2/5", "--offset", "1e-3", "--seeds", "4",
                      "--steps", "50", "--csv", str(pcsv))
    assert code == 0 and pcsv.read_text().startswith("step,abs_im_x,abs_im_y,dist_to_Ind\n")


def test_cli_errors(tmp_path, capsys):
    assert run_command(["--out", str(tmp_path / "nope" / "r.json"), "xie", "--d", "3", "--matrix-only"]) == 1
    assert run_command(["ind", "--map", "(x/0, y)"]) == 1
    assert run_command(["ind", "--map", "(x, y"]) == 1
    assert run_command(["xie"]) == 1
    assert run_command(["probe", "--map", "(y, x)", "--offset", "1"]) == 1
    err = capsys.readouterr().err
    assert "ParseError" in err and "ZeroDenominator" in err


def test_console_script_installed():
    import shutil
    assert shutil.which("biratio") is not None or os.environ.get("CI_NO_SCRIPTS")
