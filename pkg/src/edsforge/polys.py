"""Dense univariate polynomials as tuples of coefficients, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

Poly = tuple


def trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(p, q) -> Poly:
    return trim(a + b for a, b in zip_longest(p, q, fillvalue=0))


def psub(p, q) -> Poly:
    return trim(a - b for a, b in zip_longest(p, q, fillvalue=0))


def pscale(p, c) -> Poly:
    return trim(c * a for a in p)


def pmul(p, q) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def ppow(p, e: int) -> Poly:
    out: Poly = (1,)
    while e:
        if e & 1:
            out = pmul(out, p)
        p = pmul(p, p)
        e >>= 1
    return out


def peval(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def degree(p) -> int:
    return len(trim(p)) - 1


def homogeneous_eval(p, deg: int, x, z):
    """Evaluate z**deg * p(x/z), exactly, for ints x, z."""
    # sum a_i x^i z^(deg - i)
    return sum(a * x**i * z ** (deg - i) for i, a in enumerate(p))


def det(rows) -> Fraction:
    """Determinant by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(p, q) -> int:
    """Sylvester resultant of two integer polynomials."""
    p, q = trim(p), trim(q)
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    if size == 0:
        return 1
    rows = []
    hi_p, hi_q = list(reversed(p)), list(reversed(q))
    for i in range(dq):
        rows.append([0] * i + hi_p + [0] * (size - i - dp - 1))
    for i in range(dp):
        rows.append([0] * i + hi_q + [0] * (size - i - dq - 1))
    return det(rows)


def pderiv(p) -> Poly:
    return trim(i * a for i, a in enumerate(p))[1:] if len(p) > 1 else ()
