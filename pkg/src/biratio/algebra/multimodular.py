"""Exact resultants and squarefree parts over Z by Chinese remaindering.

Both routines return exact results: the resultant is reconstructed from
enough primes to exceed a proven coefficient bound, and the squarefree part
is verified by exact division before it is returned.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import modular
from .rings import QQ, p_divmod, trim


def one_norm(rows) -> int:
    return sum(abs(c) for row in rows for c in row)


def _dense(rows, p):
    width = max((len(r) for r in rows), default=0)
    out = np.zeros((len(rows), max(width, 1)), dtype=np.int64)
    for k, r in enumerate(rows):
        for e, c in enumerate(r):
            out[k, e] = c % p
    return out


def _scalar_resultant(a, b, p):
    res = 1
    a, b = modular.trim(list(a)), modular.trim(list(b))
    if not a or not b:
        return 0
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return res * pow(b[0], m, p) % p
        r = modular.poly_rem(a, b, p)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2:
            res = -res
        res = res * pow(b[-1], m - k, p) % p
        a, b = b, r


def resultant_mod(A, B, p):
    """``Res_v(A, B) mod p`` as a coefficient list in ``u``.

    ``A`` and ``B`` are lists indexed by v-degree of integer coefficient lists
    in ``u``; their last entries (the v-leading coefficients) are nonzero.
    The sample points are consecutive integers starting at a prime-dependent
    offset.  Returns None when the prime is unsuitable (a leading coefficient
    vanishes modulo p at a sample point).
    """
    dA, dB = len(A) - 1, len(B) - 1
    degu = dA * max(len(r) - 1 for r in B) + dB * max(len(r) - 1 for r in A)
    lcA = modular.reduce_poly(A[-1], p)
    lcB = modular.reduce_poly(B[-1], p)
    if not lcA or not lcB:
        return None
    start = (p * 40503) % (p - degu - 2) + 1
    pts = np.arange(start, start + degu + 1, dtype=np.int64)
    EA = modular.veval_bivariate(_dense(A, p), pts, p)
    EB = modular.veval_bivariate(_dense(B, p), pts, p)
    if not (EA[:, -1].all() and EB[:, -1].all()):
        return None  # a leading coefficient vanishes at a sample point; use another prime
    vals, ok = modular.vresultant(EA, EB, p)
    for k in np.nonzero(~ok)[0]:
        vals[k] = _scalar_resultant([int(c) for c in EA[k]], [int(c) for c in EB[k]], p)
    return modular.vinterpolate(pts, vals, p)


def _crt_step(values, modulus, residues, p):
    """Combine coefficient lists known mod ``modulus`` with residues mod ``p``."""
    inv = pow(modulus % p, p - 2, p)
    n = max(len(values), len(residues))
    values = list(values) + [0] * (n - len(values))
    residues = list(residues) + [0] * (n - len(residues))
    out = [v + modulus * ((r - v) * inv % p) for v, r in zip(values, residues)]
    return out, modulus * p


def _symmetric(v, m):
    return v - m if v > m // 2 else v


def resultant_zz(A, B) -> list[int]:
    """Exact ``Res_v(A, B)`` over Z (Sylvester sign convention), lowest degree first."""
    if not A or not B:
        return []
    bound = one_norm(A) ** (len(B) - 1) * one_norm(B) ** (len(A) - 1)
    values, modulus = [], 1
    for p in modular.prime_stream():
        r = resultant_mod(A, B, p)
        if r is None:
            continue
        values, modulus = _crt_step(values, modulus, r, p)
        if modulus > 2 * bound:
            break
    return [int(c) for c in trim(tuple(_symmetric(v, modulus) for v in values), _ZZ0)]


class _ZZ0:
    @staticmethod
    def is_zero(a):
        return a == 0


def rational_reconstruction(a: int, m: int):
    """Fraction ``n/d`` with ``n = a d mod m`` and ``|n|, d <= sqrt(m/2)``, or None."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _monic_mod(a, p):
    inv = modular.inv(a[-1], p)
    return [c * inv % p for c in a]


def _exact_div_mod(a, b, p):
    a = list(a)
    db = len(b) - 1
    ib = modular.inv(b[-1], p)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * ib % p
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - c * bi) % p
    return modular.trim(q)


def squarefree_part_zz(R) -> tuple:
    """Monic squarefree part of an integer polynomial, as Fractions.

    Candidates come from images ``R_p / gcd(R_p, R_p')``; a candidate ``S``
    is accepted once ``S | R`` and ``(R / S) | R'`` hold exactly, which
    forces ``R / S = gcd(R, R')`` because the modular gcd degree bounds the
    true one from above.
    """
    R = [int(c) for c in R]
    n = len(R) - 1
    if n <= 0:
        return (Fraction(1),)
    dR = [i * R[i] for i in range(1, n + 1)]
    Rq = tuple(Fraction(c) for c in R)
    dRq = tuple(Fraction(c) for c in dR)
    best_deg, values, modulus, last = -1, [], 1, None
    for count, p in enumerate(modular.prime_stream()):
        if R[-1] % p == 0:
            continue
        Rp = modular.reduce_poly(R, p)
        g = modular.poly_gcd(Rp, modular.reduce_poly(dR, p), p)
        Sp = _monic_mod(_exact_div_mod(Rp, g, p), p)
        dS = len(Sp) - 1
        if dS < best_deg:
            continue
        if dS > best_deg:
            best_deg, values, modulus, last = dS, [], 1, None
        values, modulus = _crt_step(values, modulus, Sp, p)
        cand = [rational_reconstruction(v, modulus) for v in values]
        if any(c is None for c in cand):
            continue
        cand = tuple(cand)
        if cand != last:
            last = cand
            continue
        q, r = p_divmod(Rq, cand, QQ)
        if r:
            continue
        if p_divmod(dRq, q, QQ)[1]:
            continue
        return cand
    raise RuntimeError("prime supply exhausted")  # pragma: no cover


def _primitive_int(h):
    den = math.lcm(*(Fraction(c).denominator for c in h))
    return [int(Fraction(c) * den) for c in h]


def coprime_to_resultant(h, A, B, attempts: int = 3) -> bool:
    """True when ``h`` is provably coprime to ``Res_v(A, B)`` over Q.

    A nonconstant common factor g over Q survives reduction modulo any prime
    not dividing the leading coefficient of ``h`` (g divides h, so its leading
    coefficient divides that of h), so a unit gcd modulo one such prime is a
    proof.  ``False`` only means "not proven".
    """
    hz = _primitive_int(h)
    tried = 0
    for p in modular.prime_stream(2**31 - 10**6):
        if hz[-1] % p == 0:
            continue
        r = resultant_mod(A, B, p)
        if not r:
            continue
        g = modular.poly_gcd(modular.reduce_poly(hz, p), r, p)
        if len(g) == 1:
            return True
        tried += 1
        if tried >= attempts:
            return False
    return False  # pragma: no cover


def shared_factor(h, A, B, max_primes: int = 40):
    """Monic divisor of the squarefree ``h`` holding every root shared with ``Res_v(A, B)``.

    The divisor is reconstructed from modular gcds and accepted only after
    ``h`` / divisor is proven coprime to the resultant, so the result is
    exact.  Returns None if no certified divisor was found.
    """
    h = tuple(Fraction(c) for c in h)
    hz = _primitive_int(h)
    best, values, modulus, last = None, [], 1, None
    for count, p in enumerate(modular.prime_stream(2**31 - 2 * 10**6)):
        if count >= max_primes:
            return None
        if hz[-1] % p == 0:
            continue
        r = resultant_mod(A, B, p)
        if not r:
            continue
        g = modular.poly_gcd(modular.reduce_poly(hz, p), r, p)
        dg = len(g) - 1
        if dg == 0:
            return (Fraction(1),)
        if best is not None and dg > best:
            continue
        if best is None or dg < best:
            best, values, modulus, last = dg, [], 1, None
        values, modulus = _crt_step(values, modulus, g, p)
        cand = [rational_reconstruction(v, modulus) for v in values]
        if any(c is None for c in cand):
            continue
        cand = tuple(cand)
        if cand != last:
            last = cand
            continue
        q, rem = p_divmod(h, cand, QQ)
        if rem:
            continue
        if len(q) == 1 or coprime_to_resultant(q, A, B):
            return cand
    return None  # pragma: no cover
