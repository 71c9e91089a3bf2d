"""Heuristic probe of orbits started slightly off the real torus.

A bounded verdict is numerical evidence only: it says that no sampled orbit
left a neighbourhood of the real locus or approached an indeterminacy point
within N steps, nothing about normal families.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .torus import GUARD, TWO_PI, as_numeric, hom_from_w

# |log|w|| above this means the orbit has collapsed onto x = +-i
ESCAPE = 30.0
IND_TOL = 1e-6


def _hom_points(points):
    """IndPoints (None = oo) as normalised homogeneous arrays ``(k, 2)`` per factor."""
    X = np.array([[0, 1] if p.x is None else [1, p.x] for p in points], dtype=complex)
    Y = np.array([[0, 1] if p.y is None else [1, p.y] for p in points], dtype=complex)
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return X, Y


def _chordal_hom(a0, a1, b0, b1):
    """Chordal distance between unit-normalised homogeneous points (broadcasting)."""
    return np.abs(a0 * b1 - a1 * b0)


def _log_w(h0, h1):
    """|log|w|| for w the Cayley coordinate of [h0 : h1]."""
    with np.errstate(divide="ignore"):
        return np.abs(np.log(np.abs(h1 - 1j * h0)) - np.log(np.abs(h1 + 1j * h0)))


@dataclass
class SeedTrace:
    seed: tuple
    bounded: bool
    max_drift: float
    min_ind_distance: float
    steps_completed: int
    reason: Optional[str] = None


@dataclass
class ProbeReport:
    offset: float
    N: int
    seeds: list
    trace: list = field(default_factory=list)  # rows (step, |Im x|, |Im y|, dist_to_Ind) of seed 0
    label: str = "heuristic evidence, not a proof"

    @property
    def all_bounded(self) -> bool:
        return all(s.bounded for s in self.seeds)

    @property
    def verdict(self) -> str:
        return "bounded" if self.all_bounded else "unbounded-or-Ind-approach"

    @property
    def max_drift(self) -> float:
        return max(s.max_drift for s in self.seeds)

    @property
    def min_ind_distance(self) -> float:
        return min(s.min_ind_distance for s in self.seeds)


def _run(F, ind, X, Y, N, escape, ind_tol, record):
    """Iterate all seeds together; returns per-seed drift, ind distance, status."""
    k = X[0].shape[0]
    drift = np.maximum(_log_w(*X), _log_w(*Y))
    IX, IY = ind
    dmin = np.full(k, np.inf)
    alive = np.ones(k, dtype=bool)
    reason = [None] * k
    steps = np.zeros(k, dtype=int)
    rows = []
    for step in range(N + 1):
        if len(IX):
            d = np.maximum(_chordal_hom(X[0][:, None], X[1][:, None], IX[None, :, 0], IX[None, :, 1]),
                           _chordal_hom(Y[0][:, None], Y[1][:, None], IY[None, :, 0], IY[None, :, 1]))
            dnow = d.min(axis=1)
        else:
            dnow = np.full(k, np.inf)
        dmin = np.where(alive, np.minimum(dmin, dnow), dmin)
        cur = np.maximum(_log_w(*X), _log_w(*Y))
        drift = np.where(alive, np.maximum(drift, cur), drift)
        if record:
            with np.errstate(divide="ignore", invalid="ignore"):
                ix = np.abs((X[1][0] / X[0][0]).imag) if X[0][0] != 0 else math.inf
                iy = np.abs((Y[1][0] / Y[0][0]).imag) if Y[0][0] != 0 else math.inf
            rows.append((step, float(ix), float(iy), float(dnow[0])))
        for j in np.nonzero(alive)[0]:
            if dnow[j] <= ind_tol:
                alive[j], reason[j] = False, f"Ind approach at step {step}"
            elif not np.isfinite(cur[j]) or cur[j] > escape:
                alive[j], reason[j] = False, f"escape at step {step}"
        if step == N or not alive.any():
            break
        X, Y, s = F.homogeneous(X, Y)
        steps = np.where(alive, step + 1, steps)
        for j in np.nonzero(alive & ~(s > GUARD))[0]:
            alive[j], reason[j] = False, f"singular evaluation at step {step}"
        # keep dead seeds finite so the vector arithmetic stays quiet
        X = tuple(np.where(alive, c, 1.0) for c in X)
        Y = tuple(np.where(alive, c, 1.0) for c in Y)
    return drift, dmin, reason, steps, rows


def complex_probe(f, offset: float, seeds: int, N: int, ind_f=None, ind_finv=None,
                  rng_seed: int = 0, escape: float = ESCAPE, ind_tol: float = IND_TOL) -> ProbeReport:
    """Forward orbits under f and backward orbits under f^-1 of off-real seeds.

    Seeds are torus points whose angles get imaginary parts ``+-offset``
    (random signs), so each Cayley coordinate satisfies ``|log|w|| = offset``.
    ``ind_f`` and ``ind_finv`` are point lists (defaults: computed exactly
    from f and its inverse).
    """
    from ..core.indeterminacy import indeterminacy_set
    if f.inverse is None:
        raise ValueError("complex_probe needs a map with an explicit inverse")
    if ind_f is None:
        ind_f = indeterminacy_set(f).points
    if ind_finv is None:
        ind_finv = indeterminacy_set(f.inverse).points
    rng = np.random.default_rng(rng_seed)
    phi = rng.uniform(0.0, TWO_PI, size=(seeds, 2))
    signs = rng.choice([-1.0, 1.0], size=(seeds, 2))
    z = phi + 1j * offset * signs
    X = hom_from_w(np.exp(1j * z[:, 0]))
    Y = hom_from_w(np.exp(1j * z[:, 1]))

    fwd = _run(as_numeric(f), _hom_points(ind_f), X, Y, N, escape, ind_tol, True)
    bwd = _run(as_numeric(f.inverse), _hom_points(ind_finv), X, Y, N, escape, ind_tol, False)
    out = []
    for j in range(seeds):
        reason = None
        if fwd[2][j]:
            reason = f"forward: {fwd[2][j]}"
        elif bwd[2][j]:
            reason = f"backward: {bwd[2][j]}"
        out.append(SeedTrace((float(phi[j, 0]), float(phi[j, 1])), reason is None,
                             float(max(fwd[0][j], bwd[0][j])), float(min(fwd[1][j], bwd[1][j])),
                             int(min(fwd[3][j], bwd[3][j])), reason))
    return ProbeReport(offset, N, out, fwd[4])
