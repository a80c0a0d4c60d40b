"""Pure-Python reference implementations of the hot kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature and the same results; :mod:`mhessian.kernels` picks one at import.
"""
from __future__ import annotations

from fractions import Fraction

BACKEND = "python"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def poly_mul(a: dict, b: dict) -> dict:
    """Product of two sparse term maps ``{exponent tuple: coefficient}``."""
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: _norm(c) for e, c in out.items() if c}


def rank_profile_mod_p(rows: list, ncols: int, p: int) -> list:
    """Greedy column rank profile of an integer matrix over GF(p).

    Returns the indices of the lexicographically first maximal set of
    linearly independent columns.
    """
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    used = [False] * nrows
    pivots = []
    for c in range(ncols):
        piv = -1
        for i in range(nrows):
            if not used[i] and m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        used[piv] = True
        pivots.append(c)
        prow = m[piv]
        inv = pow(prow[c], p - 2, p)
        for i in range(nrows):
            if used[i] or not m[i][c]:
                continue
            f = m[i][c] * inv % p
            ri = m[i]
            for k in range(c, ncols):
                if prow[k]:
                    ri[k] = (ri[k] - f * prow[k]) % p
        if len(pivots) == nrows:
            break
    return pivots


def det_mod_p(rows: list, p: int) -> int:
    n = len(rows)
    m = [[x % p for x in r] for r in rows]
    det = 1
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        prow = m[c]
        det = det * prow[c] % p
        inv = pow(prow[c], p - 2, p)
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv % p
                ri = m[i]
                for k in range(c, n):
                    ri[k] = (ri[k] - f * prow[k]) % p
    return det % p


def det_bareiss_int(rows: list) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * m[n - 1][n - 1]


def det_integer(rows: list) -> int:
    return det_bareiss_int(rows)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic below 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIMES: list = []


def modular_primes(count: int) -> list:
    """The ``count`` largest primes below 2**31, descending."""
    n = _PRIMES[-1] - 2 if _PRIMES else (1 << 31) - 1
    while len(_PRIMES) < count:
        if _is_prime(n):
            _PRIMES.append(n)
        n -= 2
    return _PRIMES[:count]
