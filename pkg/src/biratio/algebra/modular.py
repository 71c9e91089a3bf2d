"""Arithmetic over GF(p) used for fast exact certificates.

Reductions modulo a prime never produce a verdict on their own; callers
combine them with an argument that the reduction cannot create or hide the
property being certified (see ``poly_gcd`` and ``ind_disjoint``).

Polynomials are lists of ints, lowest degree first.  The vectorised
routines work on ``numpy.int64`` arrays; with p < 2**31 every product of
two residues fits in 63 bits.
"""
from __future__ import annotations

import numpy as np

PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def prime_stream(start: int = 2**31):
    """Primes below ``start`` in decreasing order (deterministic Miller-Rabin for 32 bits)."""
    n = start - 1
    while n > 2:
        if _is_prime32(n):
            yield n
        n -= 1


def _is_prime32(n: int) -> bool:
    if n % 2 == 0:
        return n == 2
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_poly(coeffs, p):
    return trim([c % p for c in coeffs])


def inv(a, p):
    return pow(a, p - 2, p)


def poly_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_rem(a, b, p):
    a = list(a)
    db = len(b) - 1
    ib = inv(b[-1], p)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c:
            f = c * ib % p
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - f * bi) % p
    return trim(a[:db])


def poly_gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, poly_rem(a, b, p)
    if a:
        il = inv(a[-1], p)
        a = [c * il % p for c in a]
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


# --- vectorised kernels -------------------------------------------------------

def vinv(a, p):
    """Elementwise inverse of a nonzero int64 array modulo ``p``."""
    result = np.ones_like(a)
    base = a % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def veval_bivariate(coeffs, points, p):
    """Evaluate ``sum c[i][j] x^i y^j`` at ``y = points`` giving rows of x-coefficients.

    ``coeffs`` is a dense integer array of shape (deg_x+1, deg_y+1), already
    reduced mod p.  Returns an array of shape (len(points), deg_x+1).
    """
    points = np.asarray(points, dtype=np.int64)
    out = np.zeros((points.size, coeffs.shape[0]), dtype=np.int64)
    for j in range(coeffs.shape[1] - 1, -1, -1):
        out = (out * points[:, None] + coeffs[None, :, j]) % p
    return out


def vresultant(A, B, p):
    """Resultants of many pairs of univariate polynomials with equal degree patterns.

    ``A`` has shape (N, m+1) and ``B`` shape (N, n+1), highest coefficients
    nonzero in every row.  Rows where some remainder in the Euclidean
    sequence drops degree unexpectedly are reported in the returned mask as
    unusable.
    """
    A = A.copy()
    B = B.copy()
    N = A.shape[0]
    ok = np.ones(N, dtype=bool)
    res = np.ones(N, dtype=np.int64)
    if B.shape[1] == 0 or A.shape[1] == 0:
        return np.zeros(N, dtype=np.int64), ok
    while True:
        m, n = A.shape[1] - 1, B.shape[1] - 1
        if m < n:
            # Res(A, B) = (-1)^(mn) Res(B, A)
            if (m * n) % 2:
                res = (p - res) % p
            A, B = B, A
            m, n = n, m
        if n == 0:
            res = res * _vpow(B[:, 0], m, p) % p
            return res, ok
        # remainder of A by B, all rows share the degree pattern
        ib = vinv(np.where(B[:, -1] == 0, 1, B[:, -1]), p)
        R = A.copy()
        for k in range(m - n, -1, -1):
            f = R[:, k + n] * ib % p
            R[:, k:k + n + 1] = (R[:, k:k + n + 1] - f[:, None] * B) % p
        R = R[:, :n]
        # find common degree of the remainder
        r = n - 1
        while r >= 0 and not R[ok, r].any():
            r -= 1
        if r < 0:
            res[:] = 0
            return res, ok
        ok &= R[:, r] != 0
        if (m * n) % 2:
            res = (p - res) % p
        res = res * _vpow(B[:, -1], m - r, p) % p
        A, B = B, R[:, : r + 1]


def _vpow(a, k, p):
    result = np.ones_like(a)
    base = a % p
    while k:
        if k & 1:
            result = result * base % p
        base = base * base % p
        k >>= 1
    return result


def vinterpolate(xs, ys, p):
    """Coefficients (low to high) of the polynomial through ``(xs, ys)`` mod ``p``."""
    xs = np.asarray(xs, dtype=np.int64) % p
    c = np.asarray(ys, dtype=np.int64) % p
    n = xs.size
    c = c.copy()
    # divided differences; equally spaced points need one scalar inverse per level
    step = int(xs[1] - xs[0]) if n > 1 else 1
    spaced = n > 1 and bool(np.all(np.diff(xs) == step))
    for k in range(1, n):
        num = (c[k:] - c[k - 1:-1]) % p
        if spaced:
            c[k:] = num * inv(k * step % p, p) % p
        else:
            den = (xs[k:] - xs[: n - k]) % p
            c[k:] = num * vinv(den, p) % p
    # Newton form to monomial basis
    coeffs = np.zeros(n, dtype=np.int64)
    coeffs[0] = c[n - 1]
    for k in range(n - 2, -1, -1):
        # coeffs = coeffs * (x - xs[k]) + c[k]
        shifted = np.zeros(n, dtype=np.int64)
        shifted[1:] = coeffs[:-1]
        coeffs = (shifted - coeffs * xs[k] + c[k] * (np.arange(n) == 0)) % p
    return trim([int(v) for v in coeffs])


