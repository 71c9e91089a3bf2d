"""Bidegree matrices, degrees against ample classes and Xie's growth criterion.

H^2(P1 x P1; Z) has basis H, V with H.H = V.V = 0 and H.V = 1.  Row i of the
bidegree matrix of ``f`` holds the (x, y) bidegree of coordinate i, so the
class ``uH + vV`` pulls back to ``M (u, v)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath

from ..algebra.scalars import QuadExt, quad_cmp, Ordering
from .maps import SurfaceMap, compose

Number = Union[int, Fraction, QuadExt]

# Xie's constant is 2^(3/2) 3^18; only its square is rational.
XIE_CONSTANT_SQUARED = 8 * 3 ** 36
XIE_CONSTANT_TEXT = "2^(3/2)*3^18"


@dataclass(frozen=True)
class BidegreeMatrix:
    m11: int
    m12: int
    m21: int
    m22: int

    @classmethod
    def from_rows(cls, rows) -> "BidegreeMatrix":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> "BidegreeMatrix":
        return cls(1, 0, 0, 1)

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def __matmul__(self, other: "BidegreeMatrix") -> "BidegreeMatrix":
        return BidegreeMatrix(self.m11 * other.m11 + self.m12 * other.m21,
                              self.m11 * other.m12 + self.m12 * other.m22,
                              self.m21 * other.m11 + self.m22 * other.m21,
                              self.m21 * other.m12 + self.m22 * other.m22)

    def __pow__(self, k: int) -> "BidegreeMatrix":
        if k < 0:
            raise ValueError("negative matrix power")
        result, base = BidegreeMatrix.identity(), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, u: Number, v: Number) -> tuple:
        return (self.m11 * u + self.m12 * v, self.m21 * u + self.m22 * v)

    def norm(self) -> int:
        """Maximum absolute row sum."""
        return max(self.m11 + self.m12, self.m21 + self.m22)

    def as_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        return f"[[{self.m11},{self.m12}],[{self.m21},{self.m22}]]"


def bidegree_matrix(f: SurfaceMap) -> BidegreeMatrix:
    return BidegreeMatrix.from_rows(f.bidegrees())


def family_matrix(d: int) -> BidegreeMatrix:
    """Bidegree matrix ``[[2d, 1], [1, 0]]`` of ``g_n``."""
    return BidegreeMatrix(2 * d, 1, 1, 0)


def family_lambda(d: int) -> QuadExt:
    """Leading eigenvalue ``d + sqrt(d^2 + 1)`` of the family matrix."""
    return d + QuadExt.sqrt(d * d + 1)


@dataclass(frozen=True)
class AmpleClass:
    """The class ``coeff_H * H + coeff_V * V``; both coefficients positive."""

    coeff_H: Number
    coeff_V: Number

    def __post_init__(self):
        for c in (self.coeff_H, self.coeff_V):
            if not _positive(c):
                raise ValueError(f"ample class needs positive coefficients, got {c}")

    def self_intersection(self) -> Number:
        return 2 * self.coeff_H * self.coeff_V


def _positive(c) -> bool:
    if isinstance(c, QuadExt):
        return c.sign() > 0
    return c > 0


def intersection(a: tuple, b: tuple) -> Number:
    """``(uH + vV).(u'H + v'V) = u v' + v u'``."""
    return a[0] * b[1] + a[1] * b[0]


def deg_ample_matrix(M: BidegreeMatrix, L: AmpleClass) -> Number:
    vec = (L.coeff_H, L.coeff_V)
    return intersection(M.apply(*vec), vec)


def deg_ample(f: SurfaceMap, L: AmpleClass) -> Number:
    """``f^*L . L`` computed from the bidegree matrix."""
    return deg_ample_matrix(bidegree_matrix(f), L)


def family_ample_class(d: int) -> AmpleClass:
    """``L = lambda H + V``, the leading eigenvector of the family matrix."""
    return AmpleClass(family_lambda(d), 1)


@dataclass
class XieVerdict:
    """Outcome of the test ``deg_L(f^2) > C deg_L(f)`` with ``C = 2^(3/2) 3^18``.

    When it holds, ``lambda(f) > deg_L(f^2) / (C deg_L(f)) > 1``; when it fails
    nothing follows, so the verdict is Inconclusive rather than negative.
    """

    certified: bool
    deg_f: Number
    deg_f2: Number
    ratio: Number
    lower_bound: Optional[str]
    enclosure: Optional[tuple[str, str]]
    method: str
    stability_basis: str
    checks: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "lambda_lower_bound > 1" if self.certified else "Inconclusive"


def _ratio_enclosure(ratio: Number, dps: int = 30) -> tuple[str, str]:
    """Outward-rounded decimal enclosure of ``ratio / C``."""
    from ..algebra.scalars import _round_str
    iv = mpmath.iv
    saved = iv.prec
    iv.dps = dps + 20
    try:
        if isinstance(ratio, QuadExt):
            r = iv.mpf(ratio.a.numerator) / ratio.a.denominator + \
                iv.mpf(ratio.b.numerator) / ratio.b.denominator * iv.sqrt(ratio.D)
        else:
            q = Fraction(ratio)
            r = iv.mpf(q.numerator) / q.denominator
        x = r / (iv.mpf(2) * iv.sqrt(2) * iv.mpf(3) ** 18)
    finally:
        iv.prec = saved
    return (_round_str(x.a, dps, -1), _round_str(x.b, dps, 1))


def xie_from_degrees(deg_f: Number, deg_f2: Number, method: str,
                     stability_basis: str) -> XieVerdict:
    """Exact comparison ``deg_f2 / deg_f`` against C (compared through squares)."""
    ratio = deg_f2 / deg_f if isinstance(deg_f2, QuadExt) or isinstance(deg_f, QuadExt) \
        else Fraction(deg_f2) / Fraction(deg_f)
    # ratio > 0, C > 0, so ratio > C iff ratio^2 > C^2
    certified = quad_cmp(ratio * ratio, XIE_CONSTANT_SQUARED) is Ordering.GREATER
    lower, enc = None, None
    if certified:
        lower = f"({ratio})/({XIE_CONSTANT_TEXT})"
        enc = _ratio_enclosure(ratio)
    return XieVerdict(certified, deg_f, deg_f2, ratio, lower, enc, method, stability_basis)


def xie_lower_bound(f: SurfaceMap, L: AmpleClass, stability_basis: str = "explicit composition") -> XieVerdict:
    """Exact path: compose ``f o f`` symbolically and read off both degrees."""
    f2 = compose(f, f)
    return xie_from_degrees(deg_ample(f, L), deg_ample(f2, L), "symbolic composition",
                            stability_basis)


def xie_family_matrix_only(d: int, stability_basis: str) -> XieVerdict:
    """Matrix-only path for ``f_{n,theta}`` at any ``d``.

    Uses ``M(f) = A^2`` and ``M(f^2) = A^4``; the second equality is the
    stability statement ``(f^2)^* = (f^*)^2`` named in ``stability_basis``.
    """
    A = family_matrix(d)
    L = family_ample_class(d)
    lam = family_lambda(d)
    verdict = xie_from_degrees(deg_ample_matrix(A ** 2, L), deg_ample_matrix(A ** 4, L),
                               "bidegree matrices only", stability_basis)
    verdict.checks = {
        "deg_L(f) == 2*lambda^3": verdict.deg_f == 2 * lam ** 3,
        "deg_L(f^2) == 2*lambda^5": verdict.deg_f2 == 2 * lam ** 5,
        "L^2 == 2*lambda": L.self_intersection() == 2 * lam,
        "lambda^2 == 2*d*lambda + 1": lam ** 2 == 2 * d * lam + 1,
        # 4 d^2 >= 3^18 sqrt(2), squared; this is C/2, so it also holds at d = 16551
        "16*d^4 >= 2*3^36": 16 * d ** 4 >= 2 * 3 ** 36,
        # 4 d^2 >= C, squared: the threshold d >= sqrt(C)/2
        "16*d^4 >= 8*3^36": 16 * d ** 4 >= XIE_CONSTANT_SQUARED,
    }
    return verdict


@dataclass
class DegreeSequence:
    matrices: list
    estimates: list

    @property
    def estimate(self) -> float:
        return self.estimates[-1] if self.estimates else float("nan")


def degree_sequence(f: SurfaceMap, N: int, cap: Optional[int] = None) -> DegreeSequence:
    """Bidegree matrices of ``f, f^2, ..., f^N`` by explicit composition.

    Also returns ``||M_k||^(1/k)`` for each k, a numerical estimate of the
    dynamical degree.  Raises ResourceCapExceeded past the degree cap.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    mats, ests = [], []
    g = f
    for k in range(1, N + 1):
        if k > 1:
            g = compose(f, g, cap)
        M = bidegree_matrix(g)
        mats.append(M)
        ests.append(M.norm() ** (1.0 / k))
    return DegreeSequence(mats, ests)
