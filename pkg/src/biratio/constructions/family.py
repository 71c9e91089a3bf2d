"""The rational function F_n, the maps g_n, R_theta and f_{n,theta} = R_theta o g_n^2."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..algebra.bipoly import BiPoly
from ..core.degrees import bidegree_matrix, family_matrix
from ..core.elimination import derivative, gcd_q, polynomial_roots, real_root_count
from ..core.maps import SurfaceMap, compose
from ..errors import BiratioError, RealRootDetected, SimplicityViolation


@dataclass(frozen=True)
class HermanFamilyParams:
    """Parameters of ``f_{n,theta}``; ``t_j = tan(theta_j / 2)``."""

    n: int
    d: int
    t1: Fraction = Fraction(0)
    t2: Fraction = Fraction(0)

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive integers")
        object.__setattr__(self, "t1", Fraction(self.t1))
        object.__setattr__(self, "t2", Fraction(self.t2))

    @property
    def angles(self) -> tuple[float, float]:
        """``theta_j = 2 atan(t_j)`` in floats."""
        return (2 * math.atan(self.t1), 2 * math.atan(self.t2))


def fn_coefficients(n: int, d: int) -> tuple[list[Fraction], list[Fraction]]:
    """Dense numerator and denominator of F_n (lowest degree first)."""
    num = [Fraction(0)] * (2 * d + 1)
    den = [Fraction(0)] * (2 * d + 1)
    num[0] = num[2 * d] = Fraction(1)
    num[d] += Fraction(2, n)
    den[0] = den[2 * d] = Fraction(1)
    return num, den


def _fn_polys(n, d, var):
    num, den = fn_coefficients(n, d)
    return BiPoly.from_univariate(num, var), BiPoly.from_univariate(den, var)


def gn_map(n: int, d: int) -> SurfaceMap:
    """``g_n(x, y) = (F_n(x) y, x)`` with inverse ``(x, y) -> (y, x / F_n(y))``."""
    x, y, one = BiPoly.x(), BiPoly.y(), BiPoly.const(1)
    nx, dx = _fn_polys(n, d, "x")
    ny, dy = _fn_polys(n, d, "y")
    g = SurfaceMap.from_fractions(nx * y, dx, x, one, name=f"g_{n} (d={d})")
    ginv = SurfaceMap.from_fractions(y, one, x * dy, ny, name=f"g_{n}^-1 (d={d})")
    return g.with_inverse(ginv)


def rotation_map(t1, t2) -> SurfaceMap:
    """The Cayley-model rotation ``x -> (x + t1) / (1 - t1 x)`` in each factor."""
    t1, t2 = Fraction(t1), Fraction(t2)
    x, y, one = BiPoly.x(), BiPoly.y(), BiPoly.const(1)

    def build(s1, s2, name):
        return SurfaceMap.from_fractions(x + s1, one - x * s1, y + s2, one - y * s2, name=name)

    r = build(t1, t2, f"R({t1}, {t2})")
    return r.with_inverse(build(-t1, -t2, f"R({-t1}, {-t2})"))


def fn_theta_map(params: HermanFamilyParams) -> SurfaceMap:
    """``R_theta o g_n^2`` with inverse ``g_n^-2 o R_-theta``."""
    g = gn_map(params.n, params.d)
    r = rotation_map(params.t1, params.t2)
    g2 = compose(g, g)
    f = compose(r, g2)
    f.name = f"f_{params.n},theta (d={params.d}, t=({params.t1}, {params.t2}))"
    return f


@dataclass
class FnReport:
    """Exact and numeric facts about ``F_n = N / D``."""

    n: int
    d: int
    numerator: tuple
    denominator: tuple
    coprime: bool
    simple_zeros: bool
    simple_poles: bool
    real_zeros: int
    real_poles: int
    zeros: list = field(default_factory=list)
    poles: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.coprime and self.simple_zeros and self.simple_poles
                and self.real_zeros == 0 and self.real_poles == 0)


def _is_squarefree(p) -> bool:
    return len(gcd_q(p, derivative(p))) == 1


# above this degree F_n is analysed through u = x^d
DIRECT_MAX_D = 64


def _direct_report(n, d, num, den) -> FnReport:
    return FnReport(n, d, num, den,
                    coprime=len(gcd_q(num, den)) == 1,
                    simple_zeros=_is_squarefree(num), simple_poles=_is_squarefree(den),
                    real_zeros=real_root_count(num), real_poles=real_root_count(den),
                    zeros=[z for z, _ in polynomial_roots(num)],
                    poles=[z for z, _ in polynomial_roots(den)])


def _quadratic_roots(b: Fraction) -> list:
    """Roots of ``u^2 + b u + 1`` as Python complexes."""
    disc = b * b - 4
    r = complex(float(disc), 0) ** 0.5
    return [(-float(b) + r) / 2, (-float(b) - r) / 2]


def _real_dth_roots(c: complex, d: int) -> int:
    """Number of real x with x^d = c for c != 0 real or not."""
    if abs(c.imag) > 0:
        return 0
    if d % 2:
        return 1
    return 2 if c.real > 0 else 0


def _reduced_report(n, d, num, den) -> FnReport:
    """Numerator and denominator are ``q(x^d)`` with ``q`` quadratic and q(0) = 1.

    x^d = c has d simple roots for c != 0, so roots of ``q(x^d)`` are simple
    iff q has distinct roots, and two such polynomials are coprime iff their
    q's are.  Real roots: x real forces c = x^d real.
    """
    b = Fraction(2, n)
    qn, qd = (Fraction(1), b, Fraction(1)), (Fraction(1), Fraction(0), Fraction(1))
    disc_n = b * b - 4  # exact: zero iff n = 1, negative for n >= 2
    rn, rd = _quadratic_roots(b), _quadratic_roots(Fraction(0))
    real_zeros = 0
    if disc_n >= 0:
        # real roots of q_N are -1 (n = 1, double) or none
        roots = {Fraction(-1)} if disc_n == 0 else set()
        real_zeros = sum(_real_dth_roots(complex(float(c)), d) for c in roots)
    k = np.arange(d)

    def dth_roots(cs):
        return [complex(v) for c in cs for v in abs(c) ** (1.0 / d) * np.exp(1j * (np.angle(c) + 2 * np.pi * k) / d)]

    return FnReport(n, d, num, den,
                    coprime=len(gcd_q(qn, qd)) == 1,
                    simple_zeros=disc_n != 0, simple_poles=True,
                    real_zeros=real_zeros, real_poles=0,
                    zeros=dth_roots(rn if disc_n else rn[:1]), poles=dth_roots(rd))


def build_Fn(n: int, d: int, strict: bool = True, method: str = "auto") -> FnReport:
    """``F_n`` with its zero/pole report.

    ``method`` is ``direct`` (exact gcds and Sturm counts on the degree-2d
    polynomials), ``reduced`` (the same facts through ``u = x^d``) or
    ``auto`` (direct up to degree DIRECT_MAX_D).  With ``strict`` a repeated
    root raises SimplicityViolation and a real zero or pole raises
    RealRootDetected; the report rides on the exception as ``exc.report``.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive integers")
    num, den = fn_coefficients(n, d)
    num, den = tuple(num), tuple(den)
    if method == "auto":
        method = "direct" if d <= DIRECT_MAX_D else "reduced"
    rep = (_direct_report if method == "direct" else _reduced_report)(n, d, num, den)
    if strict:
        if not (rep.simple_zeros and rep.simple_poles and rep.coprime):
            exc = SimplicityViolation(f"F_{n} (d={d}) has a repeated zero or pole")
            exc.report = rep
            raise exc
        if rep.real_zeros or rep.real_poles:
            exc = RealRootDetected(f"F_{n} (d={d}) has {rep.real_zeros} real zeros, "
                                   f"{rep.real_poles} real poles")
            exc.report = rep
            raise exc
    return rep


class ConstructionError(BiratioError):
    """A builder's postcondition failed."""


def build_gn(n: int, d: int) -> SurfaceMap:
    """``g_n`` with verified inverse (both compositions reduce to the identity)."""
    build_Fn(n, d)
    g = gn_map(n, d)
    ident = SurfaceMap.identity()
    if compose(g, g.inverse) != ident or compose(g.inverse, g) != ident:
        raise ConstructionError("g_n o g_n^-1 is not the identity")
    if bidegree_matrix(g) != family_matrix(d):
        raise ConstructionError(f"bidegree of g_n is {bidegree_matrix(g)}")
    return g


def build_rotation(t1, t2) -> SurfaceMap:
    return rotation_map(t1, t2)


def cayley_conjugation_error(t1, t2, samples: int = 1000, seed: int = 0) -> float:
    """Max deviation of ``Psi R_theta Psi^-1`` from ``w -> e^{i theta} w`` on random torus points."""
    from ..dynamics.torus import NumericMap
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0, 2 * np.pi, size=(samples, 2))
    w1, w2 = np.exp(1j * phi[:, 0]), np.exp(1j * phi[:, 1])
    F = NumericMap.from_map(rotation_map(t1, t2))
    v1, v2, _ = F.on_circles(w1, w2)
    th1, th2 = 2 * math.atan(Fraction(t1)), 2 * math.atan(Fraction(t2))
    return float(max(np.abs(v1 - np.exp(1j * th1) * w1).max(),
                     np.abs(v2 - np.exp(1j * th2) * w2).max()))


def build_fn_theta(params: HermanFamilyParams) -> SurfaceMap:
    """``f_{n,theta}`` after checking F_n; its bidegree matrix must be ``A^2``."""
    build_Fn(params.n, params.d)
    f = fn_theta_map(params)
    if bidegree_matrix(f) != family_matrix(params.d) ** 2:
        raise ConstructionError(f"bidegree of f is {bidegree_matrix(f)}, expected A^2")
    return f
