"""Fixed points on the real torus by Newton's method, compared with chi(T^2) = 0."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .torus import GUARD, TWO_PI, TorusPoint, angle_grid, as_numeric, wrap

FD_STEP = 1e-6
DEDUP_TOL = 1e-6
EULER_CHARACTERISTIC = 0


@dataclass
class FixedPointRecord:
    location: TorusPoint
    residual: float
    jacobian: np.ndarray
    det: float  # det(df - I)
    classification: str

    @property
    def index(self) -> int:
        return int(np.sign(self.det))


@dataclass
class FixedPointCensus:
    points: list
    seeds: int
    nonconvergent: int
    identity_components: tuple
    tol: float
    notes: list = field(default_factory=list)

    @property
    def isolated(self) -> list:
        return [p for p in self.points if p.classification != "degenerate"]

    @property
    def isolated_count(self) -> int:
        return len(self.isolated)

    @property
    def degenerate_identity(self) -> bool:
        """Some coordinate of ``f - id`` vanishes on the whole grid."""
        return bool(self.identity_components)

    @property
    def index_sum(self) -> int:
        return sum(p.index for p in self.isolated)

    @property
    def lefschetz_consistent(self) -> bool:
        return self.index_sum == EULER_CHARACTERISTIC

    @property
    def positive_det_violations(self) -> list:
        return [p for p in self.isolated if p.det <= 0]


def _displacement(F, phi):
    img, s = F.on_angles(phi)
    return wrap(img - phi), s


def _jacobian(F, phi, h=FD_STEP):
    """Central differences of the angle map at points ``(k, 2)``; returns ``(k, 2, 2)``."""
    J = np.empty(phi.shape[:-1] + (2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = h
        plus, _ = F.on_angles(phi + e)
        minus, _ = F.on_angles(phi - e)
        J[..., :, j] = wrap(plus - minus) / (2 * h)
    return J


def classify(J: np.ndarray, det_tol: float) -> tuple[float, str]:
    """``det(df - I)`` and a label: degenerate, rotation-like or hyperbolic."""
    det = float(np.linalg.det(J - np.eye(2)))
    if abs(det) <= det_tol:
        return det, "degenerate"
    eig = np.linalg.eigvals(J)
    if np.any(np.abs(eig.imag) > 1e-9) or np.allclose(np.abs(eig), 1.0, atol=1e-6):
        return det, "rotation-like"
    return det, "hyperbolic"


def fixed_point_census(f, grid: int = 32, tol: float = DEDUP_TOL, max_iter: int = 60,
                       guard: float = GUARD) -> FixedPointCensus:
    """Newton from every point of a grid x grid lattice on F(phi) = f(phi) - phi (mod 2 pi).

    A seed that does not converge is counted, never fatal.  Roots closer
    than ``tol`` are merged.
    """
    if grid < 16:
        raise ValueError("grid must be at least 16")
    F = as_numeric(f)
    seeds = angle_grid(grid)
    disp, _ = _displacement(F, seeds)
    identity_components = tuple(j + 1 for j in range(2) if np.all(np.abs(disp[:, j]) <= tol))

    phi = seeds.copy()
    active = np.ones(len(phi), dtype=bool)
    converged = np.zeros(len(phi), dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        r, s = _displacement(F, phi[idx])
        bad = ~(s > guard)
        done = np.max(np.abs(r), axis=1) < 1e-13
        converged[idx[done & ~bad]] = True
        active[idx[done | bad]] = False
        step_idx = idx[~done & ~bad]
        if not step_idx.size:
            continue
        J = _jacobian(F, phi[step_idx]) - np.eye(2)
        rr = r[~done & ~bad]
        det = np.linalg.det(J)
        ok = np.abs(det) > 1e-14
        delta = np.zeros_like(rr)
        delta[ok] = np.linalg.solve(J[ok], rr[ok][..., None])[..., 0]
        # cap the step so Newton stays local on the torus
        norm = np.max(np.abs(delta), axis=1, keepdims=True)
        delta = np.where(norm > 0.5, delta * 0.5 / np.maximum(norm, 1e-300), delta)
        phi[step_idx] = (phi[step_idx] - delta) % TWO_PI
        active[step_idx[~ok]] = False
    roots = phi[converged]
    nonconv = int(len(phi) - converged.sum())

    points = []
    if len(roots):
        emb = np.concatenate([np.cos(roots), np.sin(roots)], axis=1)
        tree = cKDTree(emb)
        taken = np.zeros(len(roots), dtype=bool)
        for k in range(len(roots)):
            if taken[k]:
                continue
            taken[tree.query_ball_point(emb[k], tol)] = True
            loc = roots[k]
            r, _ = _displacement(F, loc[None])
            J = _jacobian(F, loc[None])[0]
            det, cls = classify(J, det_tol=max(tol, 1e-6))
            points.append(FixedPointRecord(TorusPoint(*loc), float(np.abs(r).max()), J, det, cls))
    notes = []
    if identity_components:
        notes.append(f"coordinates {list(identity_components)} of f - id vanish on the whole grid")
    return FixedPointCensus(points, len(seeds), nonconv, identity_components, tol, notes)
