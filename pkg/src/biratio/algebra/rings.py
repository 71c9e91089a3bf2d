"""Coefficient rings and dense univariate polynomials over them.

A polynomial over a ring ``R`` is a tuple of ``R``-elements, lowest degree
first, without trailing zeros (the zero polynomial is ``()``).  The
:class:`PolyRing` wrapper turns ``R[t]`` into a ring itself, so bivariate
polynomials are simply polynomials over ``PolyRing(R)``.

The gcd and resultant routines follow the subresultant PRS (Collins, Brown):
every division they perform is exact in the coefficient ring, so they run
over Z, Z[t], K[t] without ever leaving the ring.
"""
from __future__ import annotations

import math
from fractions import Fraction


class IntegerRing:
    is_field = False
    zero = 0
    one = 1

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(a, k):
        return a ** k

    @staticmethod
    def exact_div(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q

    @staticmethod
    def gcd(a, b):
        return math.gcd(a, b)

    @staticmethod
    def unit(a):
        """The unit ``u`` such that ``a / u`` is the canonical associate."""
        return -1 if a < 0 else 1


class FieldRing:
    """A field of exact scalars (``Fraction`` or ``GaussRational``)."""

    is_field = True

    def __init__(self, one=Fraction(1)):
        self.one = one
        self.zero = one - one

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(a, k):
        return a ** k

    @staticmethod
    def exact_div(a, b):
        return a / b

    def gcd(self, a, b):
        return self.one if (a or b) else self.zero

    @staticmethod
    def unit(a):
        return a


ZZ = IntegerRing()
QQ = FieldRing()


# --- dense univariate helpers -------------------------------------------------

def trim(a, R):
    a = list(a)
    while a and R.is_zero(a[-1]):
        a.pop()
    return tuple(a)


def deg(a):
    return len(a) - 1


def p_add(a, b, R):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = R.add(out[i], c)
    return trim(out, R)


def p_neg(a, R):
    return tuple(R.neg(c) for c in a)


def p_sub(a, b, R):
    return p_add(a, p_neg(b, R), R)


def p_mul(a, b, R):
    if not a or not b:
        return ()
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if R.is_zero(ai):
            continue
        for j, bj in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(ai, bj))
    return trim(out, R)


def p_scale(a, c, R):
    return trim([R.mul(c, x) for x in a], R)


def p_div_scalar(a, c, R):
    return tuple(R.exact_div(x, c) for x in a)


def p_prem(a, b, R):
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b``."""
    db = deg(b)
    d = deg(a) - db
    if d < 0:
        return tuple(a)
    lb = b[-1]
    r = list(a)
    for k in range(d, -1, -1):
        c = r[k + db] if k + db < len(r) else R.zero
        r = [R.mul(lb, x) for x in r]
        if not R.is_zero(c):
            for i, bi in enumerate(b):
                r[k + i] = R.sub(r[k + i], R.mul(c, bi))
        r = r[: k + db]
    return trim(r, R)


def p_divmod(a, b, R):
    """Euclidean division; requires the leading coefficient of ``b`` to be invertible."""
    db = deg(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [R.zero] * max(len(a) - db, 0)
    lb = b[-1]
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db]
        if R.is_zero(c):
            continue
        f = R.exact_div(c, lb)
        q[k] = f
        for i, bi in enumerate(b):
            r[k + i] = R.sub(r[k + i], R.mul(f, bi))
    return trim(q, R), trim(r[:db] if db > 0 else [], R)


def p_exact_div(a, b, R):
    q, r = p_divmod(a, b, R)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def p_pow(a, k, R):
    result = (R.one,)
    base = a
    while k:
        if k & 1:
            result = p_mul(result, base, R)
        base = p_mul(base, base, R)
        k >>= 1
    return result


def p_eval(a, x, R):
    acc = R.zero
    for c in reversed(a):
        acc = R.add(R.mul(acc, x), c)
    return acc


def p_derivative(a, R):
    # scalar coefficients only
    return trim([c * i for i, c in enumerate(a)][1:], R)


def content(a, R):
    g = R.zero
    for c in a:
        g = R.gcd(g, c)
        if not R.is_field and g == R.one:
            break
    if a and not R.is_zero(g):
        # make the primitive part canonical
        u = R.unit(a[-1])
        if R.is_field:
            return a[-1]
        if u != R.one:
            g = R.mul(g, u)
    return g


def primitive_part(a, R):
    if not a:
        return ()
    return p_div_scalar(a, content(a, R), R)


def _prs_last(A, B, R):
    """Last nonzero element of the subresultant PRS of ``A, B`` (deg A >= deg B)."""
    g = h = R.one
    while True:
        delta = deg(A) - deg(B)
        r = p_prem(A, B, R)
        if not r:
            return B
        if deg(r) == 0:
            return r
        A, B = B, p_div_scalar(r, R.mul(g, R.pow(h, delta)), R)
        g = A[-1]
        if delta:
            h = R.exact_div(R.pow(g, delta), R.pow(h, delta - 1))


def p_gcd(a, b, R):
    """Canonical gcd in ``R[t]``."""
    a, b = trim(a, R), trim(b, R)
    if not a:
        return canonical(b, R)
    if not b:
        return canonical(a, R)
    if R.is_field:
        while b:
            a, b = b, p_divmod(a, b, R)[1]
        return canonical(a, R)
    ca, cb = content(a, R), content(b, R)
    c = R.gcd(ca, cb)
    a, b = p_div_scalar(a, ca, R), p_div_scalar(b, cb, R)
    if deg(a) < deg(b):
        a, b = b, a
    last = _prs_last(a, b, R)
    if deg(last) == 0:
        return canonical((c,), R)
    return canonical(p_scale(primitive_part(last, R), c, R), R)


def canonical(a, R):
    """Canonical associate: monic over a field, positive leading unit otherwise."""
    if not a:
        return ()
    u = R.unit(a[-1])
    if R.is_field:
        return p_div_scalar(a, u, R)
    if u != R.one:
        return p_div_scalar(a, u, R)
    return tuple(a)


def p_resultant(A, B, R):
    """Resultant with the Sylvester-matrix sign convention."""
    A, B = trim(A, R), trim(B, R)
    if not A or not B:
        return R.zero
    s = 1
    if deg(A) < deg(B):
        A, B = B, A
        if deg(A) % 2 and deg(B) % 2:
            s = -1
    g = h = R.one
    while deg(B) > 0:
        delta = deg(A) - deg(B)
        if deg(A) % 2 and deg(B) % 2:
            s = -s
        r = p_prem(A, B, R)
        A = B
        if not r:
            return R.zero
        B = p_div_scalar(r, R.mul(g, R.pow(h, delta)), R)
        g = A[-1]
        if delta:
            h = R.exact_div(R.pow(g, delta), R.pow(h, delta - 1))
    if deg(A) >= 1:
        h = R.exact_div(R.pow(B[0], deg(A)), R.pow(h, deg(A) - 1))
    else:
        h = R.one
    return h if s == 1 else R.neg(h)


class PolyRing:
    """The ring ``R[t]`` with elements stored as trimmed coefficient tuples."""

    is_field = False

    def __init__(self, base):
        self.base = base
        self.zero = ()
        self.one = (base.one,)

    def is_zero(self, a):
        return not a

    def add(self, a, b):
        return p_add(a, b, self.base)

    def sub(self, a, b):
        return p_sub(a, b, self.base)

    def neg(self, a):
        return p_neg(a, self.base)

    def mul(self, a, b):
        return p_mul(a, b, self.base)

    def pow(self, a, k):
        return p_pow(a, k, self.base)

    def exact_div(self, a, b):
        return p_exact_div(a, b, self.base)

    def gcd(self, a, b):
        return p_gcd(a, b, self.base)

    def unit(self, a):
        u = self.base.unit(a[-1])
        return (u,)

    def const(self, c):
        return trim((c,), self.base)
