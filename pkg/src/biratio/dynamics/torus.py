"""Floating-point evaluation of surface maps in Cayley coordinates.

The real locus P1(R) x P1(R) is the torus |w1| = |w2| = 1 under
``w = (x - i) / (x + i)``.  Evaluation is homogeneous throughout, so the
point x = oo (w = 1) is an ordinary point and no affine infinity appears.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import SingularityApproach

TWO_PI = 2.0 * math.pi
GUARD = 1e-8


def cayley(x: complex) -> complex:
    """``(x - i) / (x + i)``; ``None`` (infinity) maps to 1."""
    if x is None:
        return 1.0 + 0.0j
    return (x - 1j) / (x + 1j)


def cayley_inverse(w: complex) -> Optional[complex]:
    """``i (1 + w) / (1 - w)``, or None at w = 1."""
    if w == 1:
        return None
    return 1j * (1 + w) / (1 - w)


def wrap(a):
    """Angles reduced to [-pi, pi)."""
    return (np.asarray(a) + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class TorusPoint:
    """Angles on S1 x S1 in [0, 2 pi), through the Cayley transform."""

    phi1: float
    phi2: float

    def __post_init__(self):
        object.__setattr__(self, "phi1", float(self.phi1) % TWO_PI)
        object.__setattr__(self, "phi2", float(self.phi2) % TWO_PI)

    @classmethod
    def from_affine(cls, x: Optional[float], y: Optional[float]) -> "TorusPoint":
        return cls(np.angle(cayley(x)), np.angle(cayley(y)))

    def to_affine(self) -> tuple[Optional[float], Optional[float]]:
        """Real coordinates ``-cot(phi / 2)``; None at phi = 0."""
        return tuple(None if p == 0.0 else -1.0 / math.tan(p / 2.0) for p in (self.phi1, self.phi2))

    def as_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2])


def torus_distance(a, b) -> np.ndarray:
    """Max over the two factors of the wrapped angular distance (vectorised)."""
    d = np.abs(wrap(np.asarray(a) - np.asarray(b)))
    return d.max(axis=-1)


class _PairEvaluator:
    """Both forms of one coordinate pair as dense complex coefficient arrays."""

    def __init__(self, pair):
        self.a, self.b = pair.bidegree
        self.c0 = self._dense(pair.p0)
        self.c1 = self._dense(pair.p1)
        # Bombieri-Weyl norm: |p(X, Y)| <= |p|_W for unit X, Y, with typical
        # values only polynomially smaller, so the guard does not drift with degree
        w = np.sqrt(np.outer([math.comb(self.a, i) for i in range(self.a + 1)],
                             [math.comb(self.b, j) for j in range(self.b + 1)]))
        self.scale = float(np.sqrt((np.abs(self.c0 / w) ** 2).sum() + (np.abs(self.c1 / w) ** 2).sum()))

    def _dense(self, p):
        out = np.zeros((self.a + 1, self.b + 1), dtype=complex)
        for (i, j), c in p.items():
            out[i, j] = complex(c)
        return out

    def __call__(self, X0, X1, Y0, Y1):
        """(den, num) = (p1, p0) evaluated on normalised homogeneous coordinates."""
        xs = [X1 ** i * X0 ** (self.a - i) for i in range(self.a + 1)]
        ys = [Y1 ** j * Y0 ** (self.b - j) for j in range(self.b + 1)]
        num = np.zeros(np.broadcast(X0, Y0).shape, dtype=complex)
        den = np.zeros_like(num)
        for i in range(self.a + 1):
            for j in range(self.b + 1):
                m = xs[i] * ys[j]
                if self.c0[i, j]:
                    num = num + self.c0[i, j] * m
                if self.c1[i, j]:
                    den = den + self.c1[i, j] * m
        return den, num


def _normalise(h0, h1):
    r = np.sqrt(np.abs(h0) ** 2 + np.abs(h1) ** 2)
    return h0 / r, h1 / r


def hom_from_w(w):
    """Homogeneous ``[x0 : x1] = [1 - w : i (1 + w)]``, unit-normalised."""
    w = np.asarray(w, dtype=complex)
    return _normalise(1 - w, 1j * (1 + w))


def w_from_hom(h0, h1):
    """``w = (x1 - i x0) / (x1 + i x0)``; infinite where x1 = -i x0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return (h1 - 1j * h0) / (h1 + 1j * h0)


class NumericMap:
    """Vectorised homogeneous evaluator of a SurfaceMap."""

    def __init__(self, evaluators, name=None):
        self.evaluators = evaluators
        self.name = name

    @classmethod
    def from_map(cls, f) -> "NumericMap":
        return cls([_PairEvaluator(c) for c in f.coords], f.name)

    def homogeneous(self, X, Y):
        """Image of normalised homogeneous points; returns (X', Y', s).

        ``s`` is the smaller of the two coordinate sizes relative to their
        Bombieri-Weyl norms; it lies in [0, 1] and tends to 0 exactly at
        indeterminacy points.
        """
        out, sizes = [], []
        for ev in self.evaluators:
            den, num = ev(X[0], X[1], Y[0], Y[1])
            size = np.sqrt(np.abs(den) ** 2 + np.abs(num) ** 2)
            sizes.append(size / ev.scale)
            with np.errstate(divide="ignore", invalid="ignore"):
                out.append((den / size, num / size))
        return out[0], out[1], np.minimum(sizes[0], sizes[1])

    def on_circles(self, w1, w2):
        """Image in Cayley coordinates; returns (w1', w2', s)."""
        X, Y, s = self.homogeneous(hom_from_w(w1), hom_from_w(w2))
        return w_from_hom(*X), w_from_hom(*Y), s

    def on_angles(self, phi):
        """Angles ``(..., 2)`` to image angles plus singularity measure."""
        phi = np.asarray(phi, dtype=float)
        w1, w2, s = self.on_circles(np.exp(1j * phi[..., 0]), np.exp(1j * phi[..., 1]))
        return np.stack([np.angle(w1), np.angle(w2)], axis=-1), s

    def __call__(self, phi):
        return self.on_angles(phi)[0]


def as_numeric(f) -> NumericMap:
    return f if isinstance(f, NumericMap) else f.numeric()


@dataclass
class OrbitRecord:
    seed: TorusPoint
    lifts: np.ndarray
    N: int
    min_singularity: float

    @property
    def angles(self) -> np.ndarray:
        return self.lifts % TWO_PI

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.lifts, axis=0)


def orbit(f, p0: TorusPoint, N: int, guard: float = GUARD) -> OrbitRecord:
    """``N`` forward steps on the real torus with a continuous lift.

    Raises SingularityApproach when an evaluation comes within ``guard`` of
    an indeterminacy point (relative size of the homogeneous image).
    """
    F = as_numeric(f)
    lifts = np.empty((N + 1, 2))
    lifts[0] = p0.as_array()
    cur = p0.as_array()
    smin = math.inf
    for k in range(N):
        nxt, s = F.on_angles(cur)
        s = float(s)
        smin = min(smin, s)
        if not s > guard or not np.all(np.isfinite(nxt)):
            raise SingularityApproach(k)
        lifts[k + 1] = lifts[k] + wrap(nxt - cur)
        cur = nxt % TWO_PI
    return OrbitRecord(p0, lifts, N, smin)


@dataclass(frozen=True)
class RotationVector:
    rho: tuple[float, float]
    error: tuple[float, float]


def rotation_vector(o: OrbitRecord) -> RotationVector:
    """Birkhoff average of the lift increments; error is the N/2 versus N spread."""
    if o.N < 100:
        raise ValueError("rotation_vector needs at least 100 steps")
    full = (o.lifts[o.N] - o.lifts[0]) / o.N
    h = o.N // 2
    half = (o.lifts[h] - o.lifts[0]) / h
    return RotationVector(tuple(full), tuple(np.abs(full - half)))


def angle_grid(grid: int) -> np.ndarray:
    t = TWO_PI * np.arange(grid) / grid
    a, b = np.meshgrid(t, t, indexing="ij")
    return np.stack([a.ravel(), b.ravel()], axis=-1)


def sup_distance(f, g, grid: int, guard: float = GUARD) -> float:
    """Max torus distance between the images of ``f`` and ``g`` over a grid^2 of angles."""
    pts = angle_grid(grid)
    fa, sf = as_numeric(f).on_angles(pts)
    ga, sg = as_numeric(g).on_angles(pts)
    bad = np.nonzero((sf <= guard) | (sg <= guard))[0]
    if bad.size:
        raise SingularityApproach(int(bad[0]), f"grid point {pts[bad[0]]} within guard radius")
    return float(torus_distance(fa, ga).max())


def rotation_angles(t1, t2) -> tuple[float, float]:
    """``theta_j = 2 atan(t_j)``."""
    return (2.0 * math.atan(float(t1)), 2.0 * math.atan(float(t2)))
