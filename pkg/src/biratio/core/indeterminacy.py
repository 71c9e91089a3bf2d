"""Indeterminacy loci and the disjointness certificate for Ind(f) and Ind(f^-1).

P1 x P1 is partitioned into four strata: the affine plane, the line
``x = oo`` minus its point at infinity, the line ``y = oo`` likewise, and
the point ``(oo, oo)``.  On each stratum the bihomogeneous forms restrict
to ordinary polynomials, so every point is found exactly once and no chart
overlaps need deduplication.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..algebra.bipoly import BiPoly
from ..algebra.rings import QQ, trim
from ..errors import PositiveDimensionalLocus
from .elimination import affine_components, component_points, line_components
from .maps import SurfaceMap

STRATA = ("affine", "x=inf", "y=inf", "x=inf,y=inf")


@dataclass(frozen=True)
class Form:
    """A dehomogenised bihomogeneous form with its formal bidegree."""

    poly: BiPoly
    a: int
    b: int

    def top_x(self) -> tuple:
        """Restriction to ``x = oo``: the coefficient of ``x^a`` as a polynomial in y."""
        return _row(self.poly, "x", self.a)

    def top_y(self) -> tuple:
        return _row(self.poly, "y", self.b)

    def corner(self) -> Fraction:
        return self.poly.terms.get((self.a, self.b), Fraction(0))


def _row(p: BiPoly, var: str, k: int) -> tuple:
    vals = {}
    for (i, j), c in p.items():
        if (i if var == "x" else j) == k:
            vals[j if var == "x" else i] = c
    m = max(vals, default=-1)
    return trim(tuple(Fraction(vals.get(e, 0)) for e in range(m + 1)), QQ)


def pair_forms(f: SurfaceMap, coordinate: int) -> tuple[Form, Form]:
    pair = f.coords[coordinate - 1]
    a, b = pair.bidegree
    return Form(pair.p0, a, b), Form(pair.p1, a, b)


@dataclass(frozen=True)
class IndPoint:
    """A point of P1 x P1; ``None`` stands for the point at infinity of a factor."""

    x: Optional[complex]
    y: Optional[complex]
    radius: float
    stratum: str

    def is_real(self) -> bool:
        return all(c is None or abs(c.imag) <= self.radius for c in (self.x, self.y))

    def certified_nonreal(self) -> bool:
        return any(c is not None and abs(c.imag) > self.radius for c in (self.x, self.y))


def chordal(a: Optional[complex], b: Optional[complex]) -> float:
    """Chordal distance on P1 (at most 1); ``None`` is infinity."""
    if a is None and b is None:
        return 0.0
    if a is None:
        return 1.0 / math.sqrt(1.0 + abs(b) ** 2)
    if b is None:
        return 1.0 / math.sqrt(1.0 + abs(a) ** 2)
    return abs(a - b) / math.sqrt((1.0 + abs(a) ** 2) * (1.0 + abs(b) ** 2))


def point_distance(p, q) -> float:
    """Distance on P1 x P1 (max of the chordal distances); accepts IndPoints or pairs."""
    px, py = (p.x, p.y) if isinstance(p, IndPoint) else p
    qx, qy = (q.x, q.y) if isinstance(q, IndPoint) else q
    return max(chordal(px, qx), chordal(py, qy))


@dataclass(frozen=True)
class IndSystem:
    """The exact description of one stratum of the common zero set of some forms."""

    label: str
    stratum: str
    equations: tuple
    components: tuple
    corner: bool = False

    @property
    def count(self) -> int:
        if self.stratum == "x=inf,y=inf":
            return int(self.corner)
        return sum(c.count for c in self.components)


def solve_forms(forms: Sequence[Form], label: str = "") -> list[IndSystem]:
    """Common zeros in P1 x P1 of bihomogeneous forms; the first two must be coprime."""
    f0, f1 = forms[0], forms[1]
    others = [f.poly for f in forms[2:]]
    systems = []
    try:
        comps = affine_components((f0.poly, f1.poly), others)
    except PositiveDimensionalLocus as exc:
        raise PositiveDimensionalLocus(f"{label} affine stratum: {exc}") from exc
    systems.append(IndSystem(label, "affine", tuple(f.poly for f in forms), tuple(comps)))
    for stratum, u, rows in (("x=inf", "y", [f.top_x() for f in forms]),
                             ("y=inf", "x", [f.top_y() for f in forms])):
        try:
            comp = line_components(rows, u)
        except PositiveDimensionalLocus as exc:
            raise PositiveDimensionalLocus(f"{label} {stratum}: {exc}") from exc
        eqs = tuple(BiPoly.from_univariate(r, u) for r in rows)
        systems.append(IndSystem(label, stratum, eqs, (comp,) if comp else ()))
    corner = all(f.corner() == 0 for f in forms)
    systems.append(IndSystem(label, "x=inf,y=inf",
                             tuple(BiPoly.const(f.corner()) for f in forms), (), corner))
    return systems


def system_points(system: IndSystem) -> list[IndPoint]:
    if system.stratum == "x=inf,y=inf":
        return [IndPoint(None, None, 0.0, system.stratum)] if system.corner else []
    out = []
    for comp in system.components:
        for u0, v0, rad in component_points(comp):
            u0 = complex(u0)
            if system.stratum == "x=inf":
                out.append(IndPoint(None, u0, rad, system.stratum))
            elif system.stratum == "y=inf":
                out.append(IndPoint(u0, None, rad, system.stratum))
            else:
                v0 = complex(v0)
                x, y = (u0, v0) if comp.u == "x" else (v0, u0)
                out.append(IndPoint(x, y, rad, system.stratum))
    return out


@dataclass
class IndSet:
    """Indeterminacy locus: exact systems per stratum and coordinate, numeric points."""

    systems: list = field(default_factory=list)
    points: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.points)

    def is_empty(self) -> bool:
        return not self.points

    def by_stratum(self, stratum: str) -> list:
        return [p for p in self.points if p.stratum == stratum]


def _dedup(points, tol=1e-9):
    out = []
    for p in points:
        if not any(point_distance(p, q) <= max(tol, p.radius + q.radius) for q in out):
            out.append(p)
    return out


def indeterminacy_set(f: SurfaceMap) -> IndSet:
    """Union over both coordinates of the common zeros of their two forms."""
    ind = IndSet()
    pts = []
    for k in (1, 2):
        for system in solve_forms(pair_forms(f, k), label=f"coordinate {k}"):
            ind.systems.append(system)
            pts.extend(system_points(system))
    ind.points = _dedup(pts)
    return ind


def bezout_bound(forms: tuple[Form, Form]) -> int:
    a, b = forms[0].a, forms[0].b
    return 2 * a * b


@dataclass
class Certificate:
    """Outcome of the disjointness test: ``disjoint`` or a list of shared points."""

    disjoint: bool
    overlaps: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    method: str = "exact elimination over Q"

    @property
    def verdict(self) -> str:
        return "Disjoint" if self.disjoint else "Overlap"


def _cost(forms):
    p, q = forms[0].poly, forms[1].poly
    return min(max(p.deg_x(), q.deg_x()), max(p.deg_y(), q.deg_y()))


def ind_disjoint(f: SurfaceMap, inverse: Optional[SurfaceMap] = None) -> Certificate:
    """Exact decision of ``Ind(f) & Ind(f^-1) = {}`` (common-zero test per coordinate pair)."""
    inv = inverse or f.inverse
    if inv is None:
        raise ValueError("ind_disjoint needs the inverse map")
    cert = Certificate(True)
    for i in (1, 2):
        fi = pair_forms(f, i)
        for j in (1, 2):
            gj = pair_forms(inv, j)
            first, second = (fi, gj) if _cost(fi) <= _cost(gj) else (gj, fi)
            label = f"Ind(f) coordinate {i} / Ind(f^-1) coordinate {j}"
            systems = solve_forms((*first, *second), label=label)
            common = [s for s in systems if s.count]
            cert.checks.append({"pair": [i, j], "label": label,
                                "common_points": sum(s.count for s in systems),
                                "strata": {s.stratum: s.count for s in systems}})
            if common:
                cert.disjoint = False
                for s in common:
                    cert.overlaps.extend(system_points(s))
    cert.overlaps = _dedup(cert.overlaps)
    return cert


def nearest(points: Sequence[IndPoint], target) -> float:
    return min((point_distance(p, target) for p in points), default=math.inf)


def hausdorff(computed: Sequence, predicted: Sequence) -> float:
    if not computed and not predicted:
        return 0.0
    if not computed or not predicted:
        return math.inf
    a = max(min(point_distance(p, q) for q in predicted) for p in computed)
    b = max(min(point_distance(p, q) for q in computed) for p in predicted)
    return max(a, b)


def unit_root(angle: float) -> complex:
    return cmath.exp(1j * angle)
