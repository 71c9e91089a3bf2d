"""Closed-form indeterminacy sets of g_n and f_{n,theta}, compared with computed ones.

Points of P1 x P1 are pairs of extended complex numbers, ``None`` standing
for infinity.  Two closed forms of the zero set Z_n are tried: the one read
off directly, with arguments ``(+-arccos(1/n) + 2 k pi) / d``, and the
shifted one ``(pi -+ arccos(1/n) + 2 k pi) / d`` obtained by solving
``x^d = -1/n +- i sqrt(1 - 1/n^2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .family import HermanFamilyParams, fn_coefficients

ZN_CANDIDATES = ("unshifted", "shifted")
MATCH_TOL = 1e-10


def zn_closed_form(n: int, d: int, candidate: str) -> np.ndarray:
    a = math.acos(1.0 / n)
    base = {"unshifted": (a, -a), "shifted": (math.pi - a, -(math.pi - a))}[candidate]
    k = np.arange(d)
    return np.concatenate([np.exp(1j * (b + 2 * math.pi * k) / d) for b in base])


def pn_closed_form(d: int) -> np.ndarray:
    k = np.arange(d)
    return np.concatenate([np.exp(1j * (s * math.pi / 2 + 2 * math.pi * k) / d) for s in (1, -1)])


INF = complex("inf")


def _ext(z):
    """Extended complex as a Python value (None = infinity)."""
    return None if not np.isfinite(z) else complex(z)


def _arr(values) -> np.ndarray:
    return np.array([INF if v is None else complex(v) for v in np.atleast_1d(values)], dtype=complex)


@dataclass(frozen=True)
class Product:
    """The set ``xs x ys``; in the closed forms one factor is a single point."""

    xs: np.ndarray
    ys: np.ndarray

    def points(self) -> list:
        return [(_ext(x), _ext(y)) for x in self.xs for y in self.ys]

    def __len__(self):
        return len(self.xs) * len(self.ys)


def _row(S, c) -> Product:
    return Product(_arr(S), _arr([c]))


def _col(c, S) -> Product:
    return Product(_arr([c]), _arr(S))


def mobius_array(z: np.ndarray, t: float) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    inf = ~np.isfinite(z)
    out[inf] = INF if t == 0 else -1.0 / t
    den = 1 - t * z[~inf]
    with np.errstate(divide="ignore", invalid="ignore"):
        out[~inf] = np.where(den == 0, INF, (z[~inf] + t) / den)
    return out


def closed_form_ind_g(Z, P) -> tuple[list, list]:
    """``Ind(g_n)`` and ``Ind(g_n^-1)`` as lists of products."""
    return [_row(Z, None), _row(P, 0)], [_col(0, Z), _col(None, P)]


def closed_form_ind_f(Z, P, t1, t2) -> tuple[list, list]:
    """``Ind(f_{n,theta})`` and ``Ind(f_{n,theta}^-1)`` from Z_n, P_n and t."""
    t1, t2 = float(t1), float(t2)
    ind = [_row(Z, None), _row(P, 0), _col(None, Z), _col(0, P)]
    zero, inf = _arr([0]), _arr([None])
    ind_inv = [Product(mobius_array(zero, t1), mobius_array(_arr(Z), t2)),
               Product(mobius_array(inf, t1), mobius_array(_arr(P), t2)),
               Product(mobius_array(_arr(Z), t1), mobius_array(zero, t2)),
               Product(mobius_array(_arr(P), t1), mobius_array(inf, t2))]
    return ind, ind_inv


def expand(products) -> list:
    return [pt for comp in products for pt in comp.points()]


def sphere_array(z: np.ndarray) -> np.ndarray:
    """P1 on the unit sphere; chord length is twice the chordal distance."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape + (3,))
    inf = ~np.isfinite(z)
    zf = z[~inf]
    r = np.abs(zf) ** 2
    out[~inf] = np.stack([2 * zf.real / (1 + r), 2 * zf.imag / (1 + r), (r - 1) / (1 + r)], axis=-1)
    out[inf] = (0.0, 0.0, 1.0)
    return out


def set_distance(S: np.ndarray, T: np.ndarray) -> float:
    """Least chordal distance between two finite subsets of P1."""
    tree = cKDTree(sphere_array(S))
    dist, _ = tree.query(sphere_array(T))
    return float(dist.min() / 2)


def min_separation(A: Sequence[Product], B: Sequence[Product]) -> float:
    """Least max-chordal distance between two unions of products.

    For products the two factors vary independently, so
    ``min max(d(x, x'), d(y, y')) = max(min d(x, x'), min d(y, y'))``.
    """
    best = math.inf
    for a in A:
        for b in B:
            best = min(best, max(set_distance(a.xs, b.xs), set_distance(a.ys, b.ys)))
    return best


def nearest_distances(A: Sequence, B: Sequence) -> np.ndarray:
    """For each point of A, the max-chordal distance to the nearest point of B."""
    from ..core.indeterminacy import point_distance
    return np.array([min(point_distance(a, b) for b in B) for a in A]) if len(B) else \
        np.full(len(A), np.inf)


@dataclass
class CandidateComparison:
    candidate: str
    distance: float
    verdict: str
    discrepancies: list = field(default_factory=list)


@dataclass
class ClosedFormIndReport:
    """A computed Ind set against every closed-form candidate."""

    label: str
    computed: list
    comparisons: dict
    tol: float = MATCH_TOL

    @property
    def matching(self) -> list[str]:
        return [c for c, cmp in self.comparisons.items() if cmp.verdict == "match"]

    @property
    def max_mismatch(self) -> float:
        return min(c.distance for c in self.comparisons.values())


def compare_closed_form(label: str, computed: Sequence, predicted: dict,
                        tol: float = MATCH_TOL) -> ClosedFormIndReport:
    """Hausdorff comparison (max-chordal metric), discrepancies listed per point."""
    pts = [(p.x, p.y) if hasattr(p, "x") else p for p in computed]
    comparisons = {}
    for name, pred in predicted.items():
        if pred and isinstance(pred[0], Product):
            pred = expand(pred)
        d1 = nearest_distances(pts, pred)
        d2 = nearest_distances(pred, pts)
        dist = float(max(d1.max(initial=0.0), d2.max(initial=0.0))) if (pts or pred) else 0.0
        disc = ([{"side": "computed", "point": _fmt(p), "distance": float(d)} for p, d in zip(pts, d1) if d >= tol]
                + [{"side": "predicted", "point": _fmt(p), "distance": float(d)} for p, d in zip(pred, d2) if d >= tol])
        comparisons[name] = CandidateComparison(name, dist, "match" if dist < tol else "mismatch", disc)
    return ClosedFormIndReport(label, pts, comparisons, tol)


def _fmt(p):
    return ["inf" if c is None else [complex(c).real, complex(c).imag] for c in p]


def family_closed_forms(params: HermanFamilyParams, candidate: str, kind: str = "f"):
    """``(Ind(map), Ind(map^-1))`` as lists of products, for ``kind`` f or g."""
    Z = zn_closed_form(params.n, params.d, candidate)
    P = pn_closed_form(params.d)
    if kind == "g":
        return closed_form_ind_g(Z, P)
    return closed_form_ind_f(Z, P, params.t1, params.t2)


def pn_stable_under_minus_inverse(d: int) -> bool:
    """Exact check that ``x -> -1/x`` permutes the roots of ``x^(2d) + 1``."""
    return _stable_under_minus_inverse(fn_coefficients(2, d)[1])


def zn_stable_under_minus_inverse(n: int, d: int) -> bool:
    return _stable_under_minus_inverse(fn_coefficients(n, d)[0])


def _stable_under_minus_inverse(p) -> bool:
    """``x^deg p(-1/x)`` is a scalar multiple of ``p`` (p(0) != 0)."""
    m = len(p) - 1
    q = [Fraction(p[m - k]) * (-1) ** (m - k) for k in range(m + 1)]
    if q[-1] == 0:
        return False
    scale = Fraction(p[-1]) / q[-1]
    return all(Fraction(a) == b * scale for a, b in zip(p, q))


@dataclass
class OrbitCircleCheck:
    samples: int
    max_error: float
    ok: bool
    fixed_points_ok: bool


def rotation_orbit_check(samples: int = 64, grid: int = 4096, seed: int = 0,
                         tol: float = 1e-9) -> OrbitCircleCheck:
    """Orbits of x on |x| = 1, x != +-i, under {R_theta} meet |x| = 1 only at x and -1/x.

    For each sample the circle parameter theta is scanned on a grid and every
    sign change of ``|R_theta(x)|^2 - 1`` is bracketed; the crossings must sit
    at theta = 0 and theta = pi, with images x and -1/x.  The points +-i
    must be fixed by every R_theta.
    """
    from scipy.optimize import brentq
    rng = np.random.default_rng(seed)
    phis = rng.uniform(0, 2 * math.pi, samples)
    # theta grid offset so that 0 and pi are not grid points
    thetas = np.linspace(-math.pi, math.pi, grid, endpoint=False) + math.pi / grid
    err = 0.0
    ok = True
    for phi in phis:
        x = complex(math.cos(phi), math.sin(phi))
        if abs(x.real) < 1e-6:
            continue

        def g(th, x=x):
            c, s = math.cos(th / 2), math.sin(th / 2)
            return abs((c * x + s) / (c - s * x)) ** 2 - 1.0

        vals = np.array([g(t) for t in thetas])
        crossings = []
        for a, b, va, vb in zip(thetas[:-1], thetas[1:], vals[:-1], vals[1:]):
            if va == 0 or va * vb < 0:
                crossings.append(brentq(g, a, b, xtol=1e-15))
        # wrap-around interval through theta = pi
        if vals[-1] * vals[0] < 0:
            crossings.append(math.pi)
        found = sorted(round(abs(c) / math.pi) for c in crossings)
        if found != [0, 1]:
            ok = False
        for c in crossings:
            th = c if abs(abs(c) - math.pi) > 1e-12 else math.pi
            cc, ss = math.cos(th / 2), math.sin(th / 2)
            img = (cc * x + ss) / (cc - ss * x) if abs(cc - ss * x) > 0 else complex("inf")
            target = x if round(abs(c) / math.pi) == 0 else -1 / x
            err = max(err, abs(img - target))
    fixed = all(abs((math.cos(th / 2) * z + math.sin(th / 2)) / (math.cos(th / 2) - math.sin(th / 2) * z) - z) < tol
                for z in (1j, -1j) for th in np.linspace(-3, 3, 13))
    return OrbitCircleCheck(samples, err, ok and err < 1e-7, fixed)
