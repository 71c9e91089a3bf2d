"""Finite-range check of the Diophantine condition |k1 a1 + k2 a2 + 2 pi k3| >= C / |k|^beta."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_K = 1000


@dataclass
class DiophantineReport:
    alpha: tuple[float, float]
    beta: float
    K_max: int
    argmin: tuple[int, int, int]
    C_emp: float
    resonances: list

    @property
    def resonant(self) -> bool:
        return self.C_emp == 0.0


def combination(alpha, k) -> float:
    return k[0] * alpha[0] + k[1] * alpha[1] + 2 * math.pi * k[2]


def diophantine_check(alpha, beta: float, K_max: int) -> DiophantineReport:
    """Exhaustive scan of ``0 < |k|_inf <= K_max``.

    Ties (in particular exact zeros) go to the smallest ``|k|_inf`` and then
    to the lexicographically largest k, so ``(1, 1, -1)`` beats ``(-1, -1, 1)``.
    ``resonances`` lists every k of minimal norm with an exact zero.
    """
    if not 0 < K_max <= MAX_K:
        raise ValueError(f"K_max must be in 1..{MAX_K}")
    a1, a2 = float(alpha[0]), float(alpha[1])
    ks = np.arange(-K_max, K_max + 1)
    k2, k3 = np.meshgrid(ks, ks, indexing="ij")
    base = k2 * a2 + 2 * math.pi * k3
    n23 = np.maximum(np.abs(k2), np.abs(k3))
    best = (math.inf, 0, ())
    zeros = []
    for k1 in ks:
        val = np.abs(k1 * a1 + base)
        norm = np.maximum(n23, abs(k1))
        with np.errstate(invalid="ignore"):
            w = val * norm.astype(float) ** beta
        w[norm == 0] = np.inf
        i = np.unravel_index(np.argmin(w), w.shape)
        cand = (float(w[i]), int(k1), int(k2[i]), int(k3[i]))
        if cand[0] == 0.0:
            z = np.argwhere((val == 0) & (norm > 0))
            zeros.extend((int(norm[p, q]), (int(k1), int(k2[p, q]), int(k3[p, q]))) for p, q in z)
        key = (cand[0], max(abs(c) for c in cand[1:]))
        if (key[0], key[1]) < (best[0], best[1] if best[2] else math.inf) or \
                (key[0] == best[0] and key[1] == best[1] and cand[1:] > best[2]):
            best = (cand[0], key[1], cand[1:])
    resonances = []
    if zeros:
        m = min(n for n, _ in zeros)
        resonances = sorted((k for n, k in zeros if n == m), reverse=True)
        best = (0.0, m, resonances[0])
    return DiophantineReport((a1, a2), float(beta), K_max, best[2], best[0], resonances)
