"""Deterministic JSON reports and CSV plot data.

Exact numbers are strings (``"p/q"``, ``"a+b*sqrt(D)"``), floats are written
with ``%.12e``, keys are sorted.  Wall-clock times live only under the
top-level ``timings`` key so two runs on the same input differ nowhere else.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .. import __version__
from ..algebra.scalars import GaussRational, QuadExt

FLOAT_FORMAT = "%.12e"


def exact_str(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return FLOAT_FORMAT % x


def to_jsonable(obj):
    """Plain JSON types; exact scalars become strings, complex numbers ``[re, im]``."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (Fraction, QuadExt, GaussRational)):
        return exact_str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return to_jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    return str(obj)


def dumps(obj, indent: int = 2) -> str:
    """JSON text with sorted keys and ``%.12e`` floats; non-finite floats become strings."""
    out = io.StringIO()
    _write(to_jsonable(obj), out, indent, 0)
    out.write("\n")
    return out.getvalue()


def _write(v, out, indent, level):
    pad, inner = " " * (indent * level), " " * (indent * (level + 1))
    if isinstance(v, float):
        s = format_float(v)
        out.write(s if math.isfinite(v) else json.dumps(s))
    elif isinstance(v, dict):
        if not v:
            out.write("{}")
            return
        out.write("{\n")
        for k, key in enumerate(sorted(v)):
            out.write(f"{inner}{json.dumps(key)}: ")
            _write(v[key], out, indent, level + 1)
            out.write(",\n" if k < len(v) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(v, list):
        if not v:
            out.write("[]")
            return
        if all(not isinstance(x, (dict, list)) for x in v):
            out.write("[")
            for k, x in enumerate(v):
                if k:
                    out.write(", ")
                _write(x, out, indent, level + 1)
            out.write("]")
            return
        out.write("[\n")
        for k, x in enumerate(v):
            out.write(inner)
            _write(x, out, indent, level + 1)
            out.write(",\n" if k < len(v) - 1 else "\n")
        out.write(pad + "]")
    else:
        out.write(json.dumps(v))


@dataclass
class Stage:
    name: str
    ok: Optional[bool]
    verdict: str
    details: dict = field(default_factory=dict)
    error: Optional[str] = None


@dataclass
class RunReport:
    """Everything a subcommand produced; ``timings`` is kept apart from the verdicts."""

    command: str
    parameters: dict
    verdict: str
    exit_code: int
    stages: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    version: str = __version__

    def to_dict(self, timings: bool = True) -> dict:
        d = {"command": self.command, "parameters": self.parameters, "verdict": self.verdict,
             "exit_code": self.exit_code, "result": self.result, "version": self.version,
             "stages": [{"name": s.name, "ok": s.ok, "verdict": s.verdict, "details": s.details,
                         "error": s.error} for s in self.stages]}
        if timings:
            d["timings"] = self.timings
        return d

    def to_json(self, timings: bool = True) -> str:
        return dumps(self.to_dict(timings))


def write_text(text: str, path: Optional[str]) -> None:
    """Write to ``path`` (``-`` or None for stdout); I/O errors propagate as OSError."""
    if path in (None, "-"):
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


ORBIT_COLUMNS = ("step", "phi1", "phi2", "lift1", "lift2")
PROBE_COLUMNS = ("step", "abs_im_x", "abs_im_y", "dist_to_Ind")


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([str(r[0])] + [format_float(float(v)) for v in r[1:]])
    return buf.getvalue()


def orbit_csv(record) -> str:
    """Columns step, phi1, phi2 (in [0, 2 pi)), lift1, lift2."""
    ang = record.angles
    return _csv(ORBIT_COLUMNS, ((k, ang[k, 0], ang[k, 1], record.lifts[k, 0], record.lifts[k, 1])
                                for k in range(len(record.lifts))))


def probe_csv(report) -> str:
    """Columns step, |Im x|, |Im y|, distance to the indeterminacy set (first seed)."""
    return _csv(PROBE_COLUMNS, report.trace)


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
