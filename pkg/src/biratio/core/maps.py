"""Birational self-maps of P1 x P1 and their composition."""
from __future__ import annotations

import os
from typing import Callable, Optional, Union

from ..algebra.bihom import BiHomPair, bihomogenize, normalize_pair
from ..algebra.bipoly import BiPoly, exact_quotient, poly_gcd
from ..errors import DegenerateComposition, ResourceCapExceeded

DEFAULT_MAX_DEGREE = 512


def max_degree_cap() -> int:
    return int(os.environ.get("BIRATIO_MAX_DEGREE", DEFAULT_MAX_DEGREE))


class SurfaceMap:
    """A rational self-map ``(x, y) -> (coord1, coord2)`` of P1 x P1.

    Equality is syntactic on the canonical coordinate pairs.  The inverse,
    when known, may be given directly or as a zero-argument callable that is
    evaluated on first access.
    """

    def __init__(self, coord1: BiHomPair, coord2: BiHomPair,
                 inverse: Union["SurfaceMap", Callable[[], "SurfaceMap"], None] = None,
                 name: Optional[str] = None):
        self.coord1 = coord1
        self.coord2 = coord2
        self._inverse = inverse
        self.name = name
        self._numeric = None

    @classmethod
    def from_fractions(cls, num1, den1, num2, den2, **kw) -> "SurfaceMap":
        return cls(bihomogenize(num1, den1), bihomogenize(num2, den2), **kw)

    @classmethod
    def identity(cls) -> "SurfaceMap":
        one = BiPoly.const(1)
        f = cls(normalize_pair(BiPoly.x(), one), normalize_pair(BiPoly.y(), one), name="identity")
        f._inverse = f
        return f

    @classmethod
    def swap(cls) -> "SurfaceMap":
        one = BiPoly.const(1)
        f = cls(normalize_pair(BiPoly.y(), one), normalize_pair(BiPoly.x(), one), name="swap")
        f._inverse = f
        return f

    @property
    def coords(self) -> tuple[BiHomPair, BiHomPair]:
        return (self.coord1, self.coord2)

    @property
    def has_inverse(self) -> bool:
        return self._inverse is not None

    @property
    def inverse(self) -> Optional["SurfaceMap"]:
        if callable(self._inverse) and not isinstance(self._inverse, SurfaceMap):
            inv = self._inverse()
            if inv._inverse is None:
                inv._inverse = self
            self._inverse = inv
        return self._inverse

    def with_inverse(self, inverse: "SurfaceMap") -> "SurfaceMap":
        """Attach ``inverse`` (and link it back to ``self``); returns ``self``."""
        self._inverse = inverse
        if isinstance(inverse, SurfaceMap) and inverse._inverse is None:
            inverse._inverse = self
        return self

    def is_real(self) -> bool:
        return not any(c.is_gaussian() for c in self.coords)

    def is_identity(self) -> bool:
        return self == SurfaceMap.identity()

    def bidegrees(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.coord1.bidegree, self.coord2.bidegree)

    def __call__(self, x, y):
        return (self.coord1.evaluate(x, y), self.coord2.evaluate(x, y))

    def evaluate_homogeneous(self, xh, yh):
        return (self.coord1.evaluate_homogeneous(xh, yh),
                self.coord2.evaluate_homogeneous(xh, yh))

    def numeric(self):
        """Cached floating-point evaluator (see :mod:`biratio.dynamics.torus`)."""
        if self._numeric is None:
            from ..dynamics.torus import NumericMap
            self._numeric = NumericMap.from_map(self)
        return self._numeric

    def __eq__(self, other):
        if not isinstance(other, SurfaceMap):
            return NotImplemented
        return self.coord1 == other.coord1 and self.coord2 == other.coord2

    def __hash__(self):
        return hash((self.coord1, self.coord2))

    def __str__(self):
        return f"({_frac(self.coord1)}, {_frac(self.coord2)})"

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<SurfaceMap{label} bidegrees={self.bidegrees()}>"


def _frac(pair: BiHomPair) -> str:
    if pair.p1 == BiPoly.const(1):
        return str(pair.p0)
    return f"({pair.p0})/({pair.p1})"


def _substitute(pair: BiHomPair, g: SurfaceMap) -> tuple[BiPoly, BiPoly]:
    """Both forms of ``pair`` evaluated at the coordinates of ``g`` (uncleared)."""
    a, b = pair.bidegree
    A, B = g.coord1.p0, g.coord1.p1
    C, D = g.coord2.p0, g.coord2.p1
    Apow, Bpow = _power_table(A, a), _power_table(B, a)
    Cpow, Dpow = _power_table(C, b), _power_table(D, b)
    xs = [Apow[i] * Bpow[a - i] for i in range(a + 1)]
    ys = [Cpow[j] * Dpow[b - j] for j in range(b + 1)]
    out = []
    for p in (pair.p0, pair.p1):
        rows: dict[int, dict] = {}
        for (i, j), c in p.items():
            rows.setdefault(i, {})[j] = c
        acc = BiPoly()
        for i, row in rows.items():
            inner = BiPoly()
            for j, c in row.items():
                inner = inner + ys[j] * c
            acc = acc + xs[i] * inner
        out.append(acc)
    return out[0], out[1]


def _power_table(p: BiPoly, n: int) -> list[BiPoly]:
    out = [BiPoly.const(1)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


def clear_pair(num: BiPoly, den: BiPoly) -> BiHomPair:
    if num.is_zero() and den.is_zero():
        raise DegenerateComposition("coordinate pair vanished identically")
    if num.is_zero():
        return normalize_pair(num, BiPoly.const(1))
    if den.is_zero():
        return normalize_pair(BiPoly.const(1), den)
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = exact_quotient(num, g), exact_quotient(den, g)
    return normalize_pair(num, den)


def predicted_bidegrees(f: SurfaceMap, g: SurfaceMap):
    """Upper bound on the bidegrees of ``f o g`` (product of bidegree matrices)."""
    (a1, b1), (a2, b2) = f.bidegrees()
    (c1, d1), (c2, d2) = g.bidegrees()
    return ((a1 * c1 + b1 * c2, a1 * d1 + b1 * d2),
            (a2 * c1 + b2 * c2, a2 * d1 + b2 * d2))


def compose(f: SurfaceMap, g: SurfaceMap, cap: Optional[int] = None) -> SurfaceMap:
    """``f o g`` with every common factor of each coordinate pair removed."""
    cap = max_degree_cap() if cap is None else cap
    bound = max(max(r) for r in predicted_bidegrees(f, g))
    if bound > cap:
        raise ResourceCapExceeded(
            f"composition would reach degree {bound} > cap {cap} (BIRATIO_MAX_DEGREE)")
    coords = []
    for pair in f.coords:
        num, den = _substitute(pair, g)
        try:
            coords.append(clear_pair(num, den))
        except DegenerateComposition as exc:
            raise DegenerateComposition(
                f"image of the inner map is contained in the indeterminacy of {pair}") from exc
    inverse = None
    if f.has_inverse and g.has_inverse:
        inverse = lambda: compose(g.inverse, f.inverse, cap)  # noqa: E731
    return SurfaceMap(coords[0], coords[1], inverse=inverse)


def iterate(f: SurfaceMap, n: int, cap: Optional[int] = None) -> SurfaceMap:
    if n < 0:
        return iterate(f.inverse, -n, cap)
    result = SurfaceMap.identity()
    for _ in range(n):
        result = compose(f, result, cap)
    return result
