"""Sparse bivariate polynomials over Q or Q(i), with gcd and resultants."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import BothZero
from . import modular
from .rings import (QQ, ZZ, FieldRing, PolyRing, p_divmod, p_gcd, p_resultant,
                    trim)
from .scalars import GaussRational, as_fraction

_GAUSS = FieldRing(GaussRational(1))


def _scalar(c):
    if isinstance(c, GaussRational):
        return c.re if c.im == 0 else c
    return as_fraction(c)


def _grlex_key(mono):
    i, j = mono
    return (i + j, i, j)


class BiPoly:
    """A polynomial in ``x, y`` stored as ``{(i, j): coefficient}`` with no zero entries."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = _scalar(c)
            if c:
                key = (int(i), int(j))
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = _scalar(c)
                else:
                    clean.pop(key, None)
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_univariate(cls, coeffs, var="x") -> "BiPoly":
        if var == "x":
            return cls({(i, 0): c for i, c in enumerate(coeffs)})
        return cls({(0, j): c for j, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def constant_value(self):
        return self._terms.get((0, 0), Fraction(0))

    def is_gaussian(self) -> bool:
        return any(isinstance(c, GaussRational) for c in self._terms.values())

    def deg_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def degree(self, var: str) -> int:
        return self.deg_x() if var == "x" else self.deg_y()

    def total_degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def leading_monomial(self):
        """Largest exponent pair for the graded-lex order (total degree, then x)."""
        return max(self._terms, key=_grlex_key) if self._terms else None

    def leading_coefficient(self):
        m = self.leading_monomial()
        return self._terms[m] if m is not None else Fraction(0)

    # ring operations
    def __add__(self, other):
        other = _as_bipoly(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_bipoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_bipoly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return BiPoly({k: c * other for k, c in self._terms.items()})
        other = _as_bipoly(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = BiPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _as_bipoly(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation and substitution
    def __call__(self, x, y):
        xs = _powers(x, self.deg_x())
        ys = _powers(y, self.deg_y())
        acc = 0
        for (i, j), c in self._terms.items():
            acc = acc + c * xs[i] * ys[j]
        return acc

    def specialize(self, var: str, value) -> "BiPoly":
        """Substitute ``var = value`` and return a polynomial in the remaining variable."""
        out: dict = {}
        if var == "x":
            pw = _powers(value, self.deg_x())
            for (i, j), c in self._terms.items():
                out[(0, j)] = out.get((0, j), 0) + c * pw[i]
        else:
            pw = _powers(value, self.deg_y())
            for (i, j), c in self._terms.items():
                out[(i, 0)] = out.get((i, 0), 0) + c * pw[j]
        return BiPoly(out)

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self._terms.items()})

    def derivative(self, var: str) -> "BiPoly":
        if var == "x":
            return BiPoly({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})
        return BiPoly({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def reverse(self, var: str, degree: int) -> "BiPoly":
        """``t^degree * p(1/t)`` in the chosen variable (homogenise then swap chart)."""
        if var == "x":
            return BiPoly({(degree - i, j): c for (i, j), c in self._terms.items()})
        return BiPoly({(i, degree - j): c for (i, j), c in self._terms.items()})

    def univariate(self, var: str) -> list:
        """Dense coefficient list of a polynomial depending on ``var`` only."""
        n = self.degree(var)
        out = [Fraction(0)] * (n + 1)
        for (i, j), c in self._terms.items():
            if (j if var == "x" else i):
                raise ValueError(f"polynomial is not univariate in {var}")
            out[i if var == "x" else j] = c
        return out

    # normal forms
    def content(self):
        """Rational content (positive) so that ``self / content`` is integral and primitive."""
        if self.is_gaussian():
            raise TypeError("content is defined for rational coefficients only")
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        if not nums:
            return Fraction(0)
        return Fraction(math.gcd(*nums), math.lcm(*dens))

    def normalize(self) -> "BiPoly":
        """Content-primitive normal form with positive graded-lex leading coefficient.

        Over Q(i) the normal form is monic instead.
        """
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        if self.is_gaussian():
            return self * (GaussRational(1) / lc)
        c = self.content()
        if lc < 0:
            c = -c
        return self * (1 / c)

    def integer_terms(self) -> dict:
        """Integer coefficients of ``L * self`` where ``L`` is the lcm of denominators."""
        L = math.lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1
        return {k: int(c * L) for k, c in self._terms.items()}

    def nested(self, main: str, ring) -> tuple:
        """Dense representation as a polynomial in ``main`` over ``ring[other]``."""
        dm, do = (self.deg_x(), self.deg_y()) if main == "x" else (self.deg_y(), self.deg_x())
        rows = [[ring.base.zero] * (do + 1) for _ in range(dm + 1)]
        for (i, j), c in self._terms.items():
            a, b = (i, j) if main == "x" else (j, i)
            rows[a][b] = c
        return trim(tuple(trim(r, ring.base) for r in rows), ring)

    @classmethod
    def from_nested(cls, rows, main: str) -> "BiPoly":
        out = {}
        for a, row in enumerate(rows):
            for b, c in enumerate(row):
                if c:
                    out[(a, b) if main == "x" else (b, a)] = c
        return cls(out)

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        return format_poly(self)


def _as_bipoly(other):
    if isinstance(other, BiPoly):
        return other
    if isinstance(other, (int, Fraction, GaussRational)):
        return BiPoly.const(other)
    return NotImplemented


def _powers(v, n):
    out = [1]
    for _ in range(max(n, 0)):
        out.append(out[-1] * v)
    return out


def format_poly(p: BiPoly) -> str:
    """Human/parser-readable form, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    parts = []
    for (i, j) in sorted(p._terms, key=_grlex_key, reverse=True):
        c = p._terms[(i, j)]
        mono = "*".join(
            [f"x^{i}" if i > 1 else "x"] * (i > 0) + [f"y^{j}" if j > 1 else "y"] * (j > 0))
        if isinstance(c, GaussRational):
            coef, neg = f"({c})", False
        else:
            neg = c < 0
            a = -c if neg else c
            coef = str(a)
        if mono:
            body = mono if coef == "1" else f"{coef}*{mono}"
        else:
            body = coef
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# --- gcd ------------------------------------------------------------------------

def _main_variable(p: BiPoly, q: BiPoly) -> str:
    dx = max(p.deg_x(), q.deg_x())
    dy = max(p.deg_y(), q.deg_y())
    return "x" if dx <= dy else "y"


def coprime_certificate(p: BiPoly, q: BiPoly, prime: int = modular.PRIMES[0]) -> bool:
    """Cheap one-sided proof that ``gcd(p, q)`` is constant.

    For each variable v in which p is non-constant, the polynomials are
    specialised at a value t of the other variable where the v-leading
    coefficient of ``p`` is nonzero mod the prime.  A primitive common factor
    h divides p over Z, so its v-leading coefficient divides that of p and
    keeps its degree after specialisation; hence a constant gcd of the
    specialisations forces deg_v h = 0.  ``False`` only means "not proven".
    """
    if p.is_gaussian() or q.is_gaussian():
        return False
    pi, qi = p.integer_terms(), q.integer_terms()
    rng = random.Random(0x5EED)
    for var in ("x", "y"):
        if p.degree(var) <= 0 or q.degree(var) <= 0:
            continue
        a = 0 if var == "x" else 1
        b = 1 - a
        dp = p.degree(var)
        lc = {}
        for k, c in pi.items():
            if k[a] == dp:
                lc[k[b]] = lc.get(k[b], 0) + c
        lc_dense = [0] * (max(lc) + 1)
        for e, c in lc.items():
            lc_dense[e] = c % prime
        for _ in range(8):
            t = rng.randrange(1, prime)
            if modular.poly_eval(lc_dense, t, prime):
                break
        else:
            return False
        ps = _specialise_mod(pi, a, b, t, prime)
        qs = _specialise_mod(qi, a, b, t, prime)
        g = modular.poly_gcd(ps, qs, prime)
        if len(g) > 1:
            return False
    return True


def _specialise_mod(terms, a, b, t, prime):
    n = max(k[a] for k in terms)
    m = max(k[b] for k in terms)
    tp = [1]
    for _ in range(m):
        tp.append(tp[-1] * t % prime)
    out = [0] * (n + 1)
    for k, c in terms.items():
        out[k[a]] = (out[k[a]] + c * tp[k[b]]) % prime
    return modular.trim(out)


def _ring_for(p: BiPoly, q: BiPoly):
    if p.is_gaussian() or q.is_gaussian():
        return _GAUSS, False
    return ZZ, True


def poly_gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """Greatest common divisor in content-primitive normal form.

    ``gcd(p, 0) == normalize(p)``; two zero inputs give zero.
    """
    if p.is_zero():
        return q.normalize()
    if q.is_zero():
        return p.normalize()
    if p.is_constant() or q.is_constant():
        return BiPoly.const(1)
    if coprime_certificate(p, q):
        return BiPoly.const(1)
    base, integral = _ring_for(p, q)
    if integral:
        p = BiPoly(p.integer_terms())
        q = BiPoly(q.integer_terms())
    main = _main_variable(p, q)
    ring = PolyRing(base)
    A = _to_ring(p, main, ring, integral)
    B = _to_ring(q, main, ring, integral)
    G = p_gcd(A, B, ring)
    return BiPoly.from_nested(G, main).normalize()


def _to_ring(p, main, ring, integral):
    rows = p.nested(main, PolyRing(QQ) if integral else ring)
    if integral:
        rows = tuple(tuple(int(c) for c in r) for r in rows)
    return rows


def exact_quotient(p: BiPoly, q: BiPoly) -> BiPoly:
    """``p / q`` when ``q`` divides ``p`` exactly; raises ArithmeticError otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    field = _GAUSS if (p.is_gaussian() or q.is_gaussian()) else QQ
    ring = PolyRing(field)
    main = "x" if q.deg_x() >= q.deg_y() else "y"
    A, B = p.nested(main, ring), q.nested(main, ring)
    Q, R = p_divmod(A, B, ring)
    if R:
        raise ArithmeticError("polynomial does not divide exactly")
    return BiPoly.from_nested(Q, main)


def resultant(p: BiPoly, q: BiPoly, var: str) -> BiPoly:
    """Resultant with respect to ``var`` (Sylvester sign convention).

    The result lives in the other variable.  It vanishes at ``t`` whenever
    ``p(., t)`` and ``q(., t)`` share a root, and also where both leading
    coefficients in ``var`` vanish (see :func:`degeneracy_locus`).
    """
    if p.is_zero() and q.is_zero():
        raise BothZero("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        return BiPoly()
    base, integral = _ring_for(p, q)
    scale = Fraction(1)
    if integral:
        cp, cq = p.content(), q.content()
        scale = cp ** max(q.degree(var), 0) * cq ** max(p.degree(var), 0)
        p, q = p * (1 / cp), q * (1 / cq)
    ring = PolyRing(base)
    A = _to_ring(p, var, ring, integral)
    B = _to_ring(q, var, ring, integral)
    r = p_resultant(A, B, ring)
    other = "y" if var == "x" else "x"
    out = BiPoly.from_univariate(r, other)
    return out * scale if integral else out


def degeneracy_locus(p: BiPoly, q: BiPoly, var: str) -> BiPoly:
    """gcd of the ``var``-leading coefficients: where the resultant may vanish spuriously."""

    def lc(f):
        d = f.degree(var)
        if var == "x":
            return BiPoly({(0, j): c for (i, j), c in f.items() if i == d})
        return BiPoly({(i, 0): c for (i, j), c in f.items() if j == d})

    return poly_gcd(lc(p), lc(q))
