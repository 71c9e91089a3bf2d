"""Exact solving of zero-dimensional bivariate systems over Q.

A system is reduced to triangular components ``{h(u) = 0, G(u, v) = 0}``
where ``h`` is squarefree over Q and ``G`` is monic and squarefree in ``v``
over the product of fields ``Q[u]/h``.  The components are found by
dynamic evaluation: a gcd is computed in ``(Q[u]/h)[v]`` as if ``Q[u]/h``
were a field, and ``h`` is split whenever a leading coefficient turns out to
be a zero divisor.

Numeric points are read off the components with mpmath root finding and a
rigorous-in-exact-arithmetic radius ``deg(p) * |p(z) / p'(z)|`` (a disk of
that radius around ``z`` contains a root of ``p``).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ..algebra.bipoly import BiPoly
from ..algebra.multimodular import (coprime_to_resultant, resultant_zz, shared_factor,
                                     squarefree_part_zz)
from ..algebra.rings import QQ, ZZ, deg, p_divmod, p_exact_div, p_gcd, p_mul, p_sub, trim
from ..errors import PositiveDimensionalLocus

Poly = tuple  # dense univariate over Q, lowest degree first


# --- univariate helpers over Q ---------------------------------------------------

def monic(a: Poly) -> Poly:
    if not a:
        return a
    lc = a[-1]
    return tuple(c / lc for c in a)


def derivative(a: Poly) -> Poly:
    return trim([c * i for i, c in enumerate(a)][1:], QQ)


def _integral(a: Poly) -> tuple:
    L = math.lcm(*(Fraction(c).denominator for c in a)) if a else 1
    return tuple(int(Fraction(c) * L) for c in a)


def gcd_q(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q, computed with integer subresultants."""
    a, b = trim(a, QQ), trim(b, QQ)
    if not a:
        return monic(b)
    if not b:
        return monic(a)
    g = p_gcd(_integral(a), _integral(b), ZZ)
    return monic(tuple(Fraction(c) for c in g))


def squarefree_part(a: Poly) -> Poly:
    a = trim(tuple(Fraction(c) for c in a), QQ)
    if deg(a) <= 0:
        return (Fraction(1),)
    g = gcd_q(a, derivative(a))
    return monic(p_exact_div(a, g, QQ))


def inverse_mod(c: Poly, h: Poly) -> Poly | None:
    """Inverse of ``c`` in ``Q[u]/h``, or None when ``gcd(c, h)`` is not 1."""
    r0, r1 = h, trim(c, QQ)
    s0, s1 = (), (Fraction(1),)
    while r1:
        q, r = p_divmod(r0, r1, QQ)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, QQ), QQ)
    if deg(r0) != 0:
        return None
    inv = tuple(v / r0[0] for v in s0)
    return p_divmod(inv, h, QQ)[1] if deg(h) > 0 else ()


def _mod(a: Poly, h: Poly) -> Poly:
    return p_divmod(a, h, QQ)[1]


# --- dynamic evaluation ------------------------------------------------------------

class _Split(Exception):
    def __init__(self, factor):
        self.factor = factor


def _reduce_vpoly(p, h):
    return trim(tuple(_mod(c, h) for c in p), _QH)


class _QuotientZero:
    zero = ()

    @staticmethod
    def is_zero(a):
        return not a


_QH = _QuotientZero()


def _make_monic(p, h):
    lc = p[-1]
    inv = inverse_mod(lc, h)
    if inv is None:
        raise _Split(gcd_q(lc, h))
    return tuple(_mod(p_mul(c, inv, QQ), h) for c in p)


def _vrem(a, b, h):
    """Remainder of ``a`` by the monic ``b`` in ``(Q[u]/h)[v]``."""
    a = list(a)
    db = len(b) - 1
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if not c:
            continue
        for i, bi in enumerate(b):
            a[k + i] = _mod(p_sub(a[k + i], p_mul(c, bi, QQ), QQ), h)
    return trim(tuple(a[:db]), _QH)


def _gcd_over(polys, h):
    """Monic gcd of ``polys`` in ``(Q[u]/h)[v]``; raises _Split on zero divisors."""
    g = ()
    for p in polys:
        p = _reduce_vpoly(p, h)
        a, b = g, p
        if not a:
            g = _make_monic(b, h) if b else ()
            continue
        while b:
            b = _make_monic(b, h)
            a, b = b, _vrem(a, b, h)
        g = a
    return g


def dynamic_gcd(polys: Sequence, h: Poly) -> list[tuple[Poly, tuple]]:
    """Split ``h`` into factors over which ``gcd(polys)`` has a uniform shape.

    ``polys`` are polynomials in ``v`` (lowest degree first) whose
    coefficients are univariate polynomials in ``u``.  Returns pairs
    ``(h_i, G_i)`` with ``prod h_i = h`` and ``G_i`` monic (or empty when all
    inputs vanish identically modulo ``h_i``).
    """
    out = []
    stack = [monic(h)]
    while stack:
        hh = stack.pop()
        if deg(hh) <= 0:
            continue
        try:
            out.append((hh, _gcd_over(polys, hh)))
        except _Split as s:
            f = s.factor
            stack.append(f)
            stack.append(monic(p_exact_div(hh, f, QQ)))
    return out


def _vderivative(p, h):
    return trim(tuple(_mod(tuple(c * i for c in p[i]), h) for i in range(1, len(p))), _QH)


def _vexact_div_monic(a, b, h):
    """Quotient of ``a`` by the monic ``b`` in ``(Q[u]/h)[v]`` (remainder assumed 0)."""
    a = list(a)
    db = len(b) - 1
    q = [()] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if not c:
            continue
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = _mod(p_sub(a[k + i], p_mul(c, bi, QQ), QQ), h)
    return trim(tuple(q), _QH)


# --- components --------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    """Solutions of ``h(u) = 0, G(u, v) = 0``.

    ``u`` names the eliminant variable ("x" or "y").  ``G`` is monic and
    squarefree in ``v`` with coefficients in ``Q[u]/h``; ``G = (1,)`` (a
    constant) means one point per root of ``h`` with ``v`` fixed by the
    stratum (used for points at infinity).
    """

    u: str
    h: Poly
    G: tuple

    @property
    def count(self) -> int:
        return deg(self.h) * max(len(self.G) - 1, 1)

    def h_poly(self) -> BiPoly:
        return BiPoly.from_univariate(self.h, self.u)

    def G_poly(self) -> BiPoly:
        v = "y" if self.u == "x" else "x"
        out = BiPoly()
        for k, c in enumerate(self.G):
            out = out + BiPoly.from_univariate(c, self.u) * BiPoly.from_univariate(
                [0] * k + [1], v)
        return out


def split_squarefree(h: Poly, G: tuple) -> list[tuple[Poly, tuple]]:
    """Replace ``G`` by its squarefree part over each field factor of ``Q[u]/h``."""
    out = []
    for hi, D in dynamic_gcd([G, _vderivative(G, h)], h):
        Gi = _reduce_vpoly(G, hi)
        if D and len(D) > 1:
            Gi = _vexact_div_monic(Gi, D, hi)
        out.append((hi, Gi))
    return out


def _vpolys(p: BiPoly, v: str):
    """``p`` as a list (indexed by v-degree) of univariate polynomials in the other variable."""
    n = p.degree(v)
    rows = [dict() for _ in range(n + 1)]
    for (i, j), c in p.items():
        a, b = (i, j) if v == "x" else (j, i)
        rows[a][b] = c
    out = []
    for r in rows:
        m = max(r, default=-1)
        out.append(trim(tuple(Fraction(r.get(k, 0)) for k in range(m + 1)), QQ))
    return tuple(out)


def choose_fiber_variable(p: BiPoly, q: BiPoly) -> str:
    """The variable to eliminate: the one of smaller degree in the pair."""
    return "y" if max(p.deg_y(), q.deg_y()) <= max(p.deg_x(), q.deg_x()) else "x"


@functools.lru_cache(maxsize=256)
def eliminant(p: BiPoly, q: BiPoly, v: str) -> Poly:
    """Squarefree part of ``Res_v(p, q)``: its roots contain the ``u``-coordinates of common zeros."""
    r = resultant_zz(_int_rows(p, v), _int_rows(q, v))
    if not r:
        raise PositiveDimensionalLocus(f"resultant in {v} vanishes identically")
    return squarefree_part_zz(r)


def _int_rows(p: BiPoly, v: str):
    return [[int(c) for c in row] for row in _vpolys(BiPoly(p.integer_terms()), v)]


def affine_components(anchor: tuple[BiPoly, BiPoly], others: Sequence[BiPoly] = (),
                      fiber: str | None = None) -> list[Component]:
    """Common affine zeros of ``anchor`` and ``others``.

    ``anchor`` must be a coprime pair so that its resultant is nonzero; the
    other polynomials only cut the anchor's finite zero set further.  When
    ``others`` is itself a coprime pair, the anchor's eliminant is first cut
    down to the factor it shares with the pair's resultant (certified by
    modular coprimality of the cofactor).
    """
    p, q = anchor
    if p.is_zero() or q.is_zero():
        raise PositiveDimensionalLocus("anchor pair contains the zero polynomial")
    v = fiber or choose_fiber_variable(p, q)
    u = "y" if v == "x" else "x"
    if p.degree(v) <= 0 and q.degree(v) <= 0:
        # both free of v: zeros are lines u = root of gcd; coprimality rules them out
        g = gcd_q(tuple(p.univariate(u)), tuple(q.univariate(u)))
        if deg(g) > 0:
            raise PositiveDimensionalLocus(f"common factor in {u} alone")
        return []
    h = eliminant(p, q, v)
    if deg(h) <= 0:
        return []
    if len(others) == 2 and all(f.degree(v) > 0 for f in others):
        A, B = _int_rows(others[0], v), _int_rows(others[1], v)
        if coprime_to_resultant(h, A, B):
            return []
        # restrict to the u-values shared with the second pair's resultant
        shared = shared_factor(h, A, B)
        if shared is not None:
            h = monic(shared)
        if deg(h) <= 0:
            return []
    polys = [_vpolys(f, v) for f in (p, q, *others) if not f.is_zero()]
    comps = []
    for hi, G in dynamic_gcd(polys, h):
        if not G:
            raise PositiveDimensionalLocus(f"all equations vanish on a fibre {u} = const")
        if len(G) <= 1:
            continue
        for hj, Gj in split_squarefree(hi, G):
            comps.append(Component(u, hj, Gj))
    return comps


def line_components(polys: Sequence[Poly], u: str) -> Component | None:
    """Common roots of univariate polynomials in ``u`` as a component (or None)."""
    g = ()
    for a in polys:
        g = gcd_q(g, a)
        if deg(g) == 0:
            return None
    if not g:
        raise PositiveDimensionalLocus(f"equations vanish on a whole line in {u}")
    return Component(u, squarefree_part(g), ((Fraction(1),),))


# --- numerics ------------------------------------------------------------------------

DPS = 50


def _mp_roots(coeffs, dps=DPS):
    """Roots of a polynomial with mpmath coefficients (lowest degree first) plus radii.

    Starting values come from numpy's companion-matrix solver and are polished
    by Newton steps at ``dps`` digits.
    """
    n = len(coeffs) - 1
    if n <= 0:
        return []
    with mpmath.workdps(dps):
        hi_first = list(reversed(coeffs))
        scale = max(abs(c) for c in hi_first)
        starts = np.roots([complex(c / scale) for c in hi_first])
        deriv = _deriv_hi(hi_first)
        out = []
        for z0 in starts:
            z = _newton_polish(hi_first, deriv, mpmath.mpc(z0))
            pv = mpmath.polyval(hi_first, z)
            dv = mpmath.polyval(deriv, z)
            rad = n * abs(pv) / abs(dv) if dv != 0 else mpmath.inf
            out.append((z, rad))
        return out


def _deriv_hi(c):
    n = len(c) - 1
    return [c[k] * (n - k) for k in range(n)]


def _newton_polish(c, d, z, steps=60):
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    for _ in range(steps):
        dv = mpmath.polyval(d, z)
        if dv == 0:
            break
        step = mpmath.polyval(c, z) / dv
        z = z - step
        if abs(step) <= tol * max(1, abs(z)):
            break
    return z


def polynomial_roots(coeffs: Poly, dps: int = DPS) -> list[tuple[complex, float]]:
    """Complex roots of a rational polynomial (lowest degree first) with radii."""
    with mpmath.workdps(dps):
        return [(complex(z), float(r)) for z, r in
                _mp_roots([mpmath.mpf(c.numerator) / c.denominator for c in map(Fraction, coeffs)], dps)]


def real_root_count(a: Poly) -> int:
    """Number of distinct real roots, by a Sturm sequence in exact arithmetic."""
    a = squarefree_part(trim(tuple(Fraction(c) for c in a), QQ))
    if deg(a) <= 0:
        return 0
    seq = [a, derivative(a)]
    while deg(seq[-1]) > 0:
        r = p_divmod(seq[-2], seq[-1], QQ)[1]
        if not r:
            break
        seq.append(tuple(-c for c in r))

    def changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    at_pos = [(p[-1] > 0) - (p[-1] < 0) for p in seq]
    at_neg = [s * (-1) ** deg(p) for s, p in zip(at_pos, seq)]
    return changes(at_neg) - changes(at_pos)


def component_points(comp: Component, dps: int = DPS) -> list[tuple[object, object, float]]:
    """Numeric ``(u, v, radius)`` triples (mpmath values) for every point of ``comp``.

    For line components ``v`` is None (fixed by the stratum).
    """
    with mpmath.workdps(dps):
        out = []
        for u0, ru in _mp_roots([mpmath.mpf(c.numerator) / c.denominator for c in comp.h], dps):
            if len(comp.G) == 1 and comp.G[0] == (Fraction(1),):
                out.append((u0, None, float(ru)))
                continue
            coeffs = [mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(g)], u0)
                      if g else mpmath.mpf(0) for g in comp.G]
            for v0, rv in _mp_roots(coeffs, dps):
                out.append((u0, v0, float(max(ru, rv))))
        return out
