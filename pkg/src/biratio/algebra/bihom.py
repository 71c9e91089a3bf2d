"""Projective coordinates of rational maps: coprime pairs of bihomogeneous forms.

A pair ``(p0, p1)`` represents the rational function ``p0 / p1``.  Both are
stored dehomogenised (``x0 = y0 = 1``); the bidegree ``(a, b)`` recovers the
forms as ``x0^a y0^b p(x1/x0, y1/y0)``.  Because the pair is coprime, ``a``
and ``b`` are simply the largest x- and y-degrees occurring in the pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ZeroDenominator
from .bipoly import BiPoly, exact_quotient, poly_gcd
from .scalars import GaussRational


@dataclass(frozen=True)
class BiHomPair:
    p0: BiPoly
    p1: BiPoly

    def __post_init__(self):
        if self.p0.is_zero() and self.p1.is_zero():
            raise ZeroDenominator("a projective coordinate cannot be (0, 0)")

    @property
    def bidegree(self) -> tuple[int, int]:
        return (max(self.p0.deg_x(), self.p1.deg_x(), 0),
                max(self.p0.deg_y(), self.p1.deg_y(), 0))

    def is_gaussian(self) -> bool:
        return self.p0.is_gaussian() or self.p1.is_gaussian()

    def forms(self):
        """Bihomogeneous terms ``{(e_x0, e_x1, e_y0, e_y1): c}`` of both forms."""
        a, b = self.bidegree
        return tuple({(a - i, i, b - j, j): c for (i, j), c in p.items()}
                     for p in (self.p0, self.p1))

    def evaluate(self, x, y):
        """Affine value ``p0(x, y) / p1(x, y)``; raises ZeroDenominator at poles."""
        den = self.p1(x, y)
        if not den:
            raise ZeroDenominator("evaluation at a pole")
        return self.p0(x, y) / den

    def evaluate_homogeneous(self, xh, yh):
        """Value as a homogeneous pair ``(den, num)`` at ``[x0:x1], [y0:y1]``."""
        a, b = self.bidegree
        x0, x1 = xh
        y0, y1 = yh
        px0, px1 = _powers(x0, a), _powers(x1, a)
        py0, py1 = _powers(y0, b), _powers(y1, b)
        vals = []
        for p in (self.p1, self.p0):
            acc = 0
            for (i, j), c in p.items():
                acc = acc + c * px1[i] * px0[a - i] * py1[j] * py0[b - j]
            vals.append(acc)
        return tuple(vals)

    def chart(self, x_at_infinity: bool, y_at_infinity: bool) -> tuple[BiPoly, BiPoly]:
        """The two forms dehomogenised in another affine chart.

        With ``x_at_infinity`` the chart coordinate is ``u = x0/x1`` (so
        ``u = 0`` is ``x = oo``); likewise for ``y``.
        """
        a, b = self.bidegree
        out = []
        for p in (self.p0, self.p1):
            if x_at_infinity:
                p = p.reverse("x", a)
            if y_at_infinity:
                p = p.reverse("y", b)
            out.append(p)
        return tuple(out)

    def swap_variables(self) -> "BiHomPair":
        return BiHomPair(self.p0.swap(), self.p1.swap())

    def __str__(self):
        return f"({self.p0}) / ({self.p1})"


def _powers(v, n):
    out = [1]
    for _ in range(n):
        out.append(out[-1] * v)
    return out


def normalize_pair(p0: BiPoly, p1: BiPoly) -> BiHomPair:
    """Joint content-primitive form, leading coefficient of ``p1`` positive.

    The leading coefficient is taken in graded-lex order; if ``p1 = 0`` the
    one of ``p0`` is used.  Over Q(i) the designated coefficient becomes 1.
    """
    if p0.is_zero() and p1.is_zero():
        raise ZeroDenominator("a projective coordinate cannot be (0, 0)")
    ref = p1 if not p1.is_zero() else p0
    lc = ref.leading_coefficient()
    if p0.is_gaussian() or p1.is_gaussian():
        s = GaussRational(1) / lc
        return BiHomPair(p0 * s, p1 * s)
    coeffs = [v for _, v in p0.items()] + [v for _, v in p1.items()]
    c = Fraction(math.gcd(*(v.numerator for v in coeffs)), math.lcm(*(v.denominator for v in coeffs)))
    if lc < 0:
        c = -c
    s = 1 / c
    return BiHomPair(p0 * s, p1 * s)


def bihomogenize(num: BiPoly, den: BiPoly, clear: bool = True) -> BiHomPair:
    """Projective pair for ``num / den`` with common factors removed.

    ``x / 1`` becomes the pair ``(x1, x0)`` of bidegree (1, 0), ``5`` the
    pair ``(5, 1)`` of bidegree (0, 0).
    """
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if clear and not num.is_zero():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = exact_quotient(num, g), exact_quotient(den, g)
    if num.is_zero():
        den = BiPoly.const(1)
    return normalize_pair(num, den)


def dehomogenize(pair: BiHomPair) -> tuple[BiPoly, BiPoly]:
    return pair.p0, pair.p1


def constant_pair(value) -> BiHomPair:
    return normalize_pair(BiPoly.const(Fraction(value) if not isinstance(value, GaussRational) else value),
                          BiPoly.const(1))
