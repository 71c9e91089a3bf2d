"""Exact scalar fields: Q (via :class:`fractions.Fraction`), Q(i) and Q(sqrt D).

Rationals are plain :class:`~fractions.Fraction` objects; they already keep
``gcd(num, den) == 1`` with a positive denominator and ``0 == 0/1``.
"""
from __future__ import annotations

import decimal
import enum
import functools
from fractions import Fraction
from numbers import Rational as _RationalABC

import mpmath

from ..errors import MixedField, ZeroDenominator

Rational = Fraction


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class GaussRational:
    """An element ``re + im*i`` of the Gaussian rationals Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDenominator("inverse of zero in Q(i)")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GaussRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


I = GaussRational(0, 1)


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, D)`` with ``n == s*s*D`` and ``D`` square-free (trial division)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, D, p = 1, 1, 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            D *= p
        p += 1 if p == 2 else 2
    D *= m
    return s, D


@functools.lru_cache(maxsize=256)
def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_decomposition(n)[0] == 1


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


class QuadExt:
    """``a + b*sqrt(D)`` in the real quadratic field Q(sqrt D), D > 1 square-free."""

    __slots__ = ("D", "a", "b")

    def __init__(self, D: int, a=0, b=0):
        if type(D) is not int or D < 2 or not is_squarefree(D):
            raise ValueError(f"D must be a square-free integer > 1, got {D!r}")
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, n: int) -> "QuadExt":
        """sqrt(n) for a positive non-square integer ``n``."""
        s, D = squarefree_decomposition(n)
        if D == 1:
            raise ValueError(f"{n} is a perfect square; sqrt is rational")
        return cls(D, 0, s)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise MixedField(f"Q(sqrt {self.D}) vs Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.D, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self.D, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.D, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self.D, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self.D,
                       self.a * other.a + self.b * other.b * self.D,
                       self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.D, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDenominator("inverse of zero in a quadratic field")
        return QuadExt(self.D, self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadExt(self.D, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        """Sign of the real embedding (sqrt D > 0), decided with rational arithmetic only."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        return sa * _sign(self.a * self.a - self.b * self.b * self.D)

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except MixedField:
            return False
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.D, self.a, self.b))

    def __lt__(self, other):
        return quad_cmp(self, other) is Ordering.LESS

    def __le__(self, other):
        return quad_cmp(self, other) is not Ordering.GREATER

    def __gt__(self, other):
        return quad_cmp(self, other) is Ordering.GREATER

    def __ge__(self, other):
        return quad_cmp(self, other) is not Ordering.LESS

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + \
                mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.D)

    def __float__(self):
        return float(self.to_mpf(30))

    def enclosure(self, dps: int = 30) -> tuple[str, str]:
        """Decimal interval guaranteed to contain the value."""
        iv = mpmath.iv
        saved = iv.prec
        iv.dps = dps + 10
        try:
            x = iv.mpf(self.a.numerator) / self.a.denominator + \
                iv.mpf(self.b.numerator) / self.b.denominator * iv.sqrt(self.D)
        finally:
            iv.prec = saved
        return (_round_str(x.a, dps, -1), _round_str(x.b, dps, 1))

    def __repr__(self):
        return f"QuadExt({self.D}, {self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.D})"


def _round_str(x, dps, direction) -> str:
    """Decimal string for an interval endpoint, rounded outward."""
    with mpmath.workdps(dps + 20):
        v = mpmath.mpf(x)
        if v == 0:
            return "0"
        e = int(mpmath.floor(mpmath.log10(abs(v)))) - dps + 1
        scaled = v / mpmath.mpf(10) ** e
        m = int(mpmath.floor(scaled) if direction < 0 else mpmath.ceil(scaled))
    return str(decimal.Decimal(m).scaleb(e, decimal.Context(prec=dps + 10)))


def quad_cmp(u, v) -> Ordering:
    """Order of the real embeddings of ``u`` and ``v`` (exact, no floating point)."""
    if isinstance(u, QuadExt):
        w = u - v
    elif isinstance(v, QuadExt):
        w = -(v - u)
    else:
        w = QuadExt(2, as_fraction(u) - as_fraction(v), 0)
    return Ordering(w.sign())
