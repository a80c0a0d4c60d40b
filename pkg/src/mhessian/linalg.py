"""Exact linear algebra over Q and over Q[x].

Polynomial determinants use fraction-free elimination for small matrices and
evaluation/interpolation (with integer determinants from the kernels) when
the matrix is large and the homogeneous degree of the answer is known.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from mhessian import kernels
from mhessian.errors import ContractError, ReductionError
from mhessian.polyring import MultiPoly, _divide_by_one, _norm

BAREISS_LIMIT = 8


# ---------------------------------------------------------------------- over Q
def rank_profile_exact(rows: list, ncols: int) -> list:
    """Lexicographically first maximal independent column set over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    used = [False] * len(m)
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(len(m)) if not used[i] and m[i][c]), -1)
        if piv < 0:
            continue
        used[piv] = True
        pivots.append(c)
        prow = m[piv]
        for i in range(len(m)):
            if used[i] or not m[i][c]:
                continue
            f = m[i][c] / prow[c]
            ri = m[i]
            for k in range(c, ncols):
                if prow[k]:
                    ri[k] -= f * prow[k]
        if len(pivots) == len(m):
            break
    return pivots


def det_rational(rows: list):
    """Exact determinant of a square matrix of ints/Fractions."""
    n = len(rows)
    if n == 0:
        return 1
    scales = []
    ints = []
    for r in rows:
        den = 1
        for x in r:
            if type(x) is Fraction:
                den = den * x.denominator // math.gcd(den, x.denominator)
        scales.append(den)
        ints.append([int(x * den) for x in r])
    d = kernels.det_integer(ints)
    total = 1
    for s in scales:
        total *= s
    return _norm(Fraction(d, total))


# ---------------------------------------------------------------------- over Q[x]
def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """``a / b`` when ``b`` divides ``a``; raises otherwise."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return a
    if b.is_constant():
        return a.scalar_mul(Fraction(1) / Fraction(b.constant_term()))
    q, r = _divide_by_one(a.terms, b.terms)
    if r:
        raise ReductionError("inexact polynomial division")
    return MultiPoly._raw(q, a.nx, a.ny)


def det_bareiss_poly(M: list) -> MultiPoly:
    """Fraction-free elimination over the polynomial ring."""
    n = len(M)
    if n == 0:
        raise ContractError("empty matrix has no layout; use det_poly")
    m = [list(r) for r in M]
    nx, ny = m[0][0].nx, m[0][0].ny
    sign = 1
    prev = MultiPoly.one(nx, ny)
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(nx, ny)
        akk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            aik = ri[k]
            for j in range(k + 1, n):
                num = ri[j] * akk - aik * rk[j] if aik else ri[j] * akk
                ri[j] = exact_divide(num, prev)
            ri[k] = MultiPoly.zero(nx, ny)
        prev = akk
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def _newton_to_monomial(vals: list) -> list:
    """Coefficients of the polynomial through ``(i, vals[i])``, ``i = 0..D``."""
    D = len(vals) - 1
    diffs = list(vals)
    coeffs = [diffs[0]]
    for j in range(1, D + 1):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        coeffs.append(Fraction(diffs[0], math.factorial(j)) if diffs[0] else 0)
    poly = [coeffs[D]]
    for i in range(D - 1, -1, -1):
        # poly * (x - i) + coeffs[i]
        nxt = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= i * c
        nxt[0] += coeffs[i]
        poly = nxt
    return poly


def _entry_tables(M: list, nfree: int):
    """Pre-scale rows to integer coefficients; returns (int entries, row scales)."""
    tables = []
    scales = []
    for row in M:
        den = 1
        for v in row:
            for c in v.terms.values():
                if type(c) is Fraction:
                    den = den * c.denominator // math.gcd(den, c.denominator)
        scales.append(den)
        tables.append([
            [(e[:nfree], int(c * den)) for e, c in v.terms.items()] if v else None
            for v in row
        ])
    return tables, scales


def det_interpolate(M: list, degree: int) -> MultiPoly:
    """Determinant of a matrix of forms whose determinant is homogeneous of ``degree``.

    Dehomogenizes at the last variable, interpolates on the grid
    ``{0..degree}^(nx-1)`` and homogenizes back.
    """
    nx = M[0][0].nx
    if M[0][0].ny:
        raise ContractError("interpolated determinants need x-only entries")
    if degree < 0:
        return MultiPoly.zero(nx)
    k = nx - 1
    tables, scales = _entry_tables(M, k)
    D = degree
    grid = {}
    pts = list(range(D + 1))
    for pt in product(pts, repeat=k):
        pw = [[1] * (D + 1) for _ in range(k)]
        for i in range(k):
            for e in range(1, D + 1):
                pw[i][e] = pw[i][e - 1] * pt[i]
        mat = []
        for trow in tables:
            r = []
            for cell in trow:
                if cell is None:
                    r.append(0)
                    continue
                s = 0
                for e, c in cell:
                    t = c
                    for i in range(k):
                        if e[i]:
                            t *= pw[i][e[i]] if e[i] <= D else pt[i] ** e[i]
                    s += t
                r.append(s)
            mat.append(r)
        grid[pt] = kernels.det_integer(mat)
    # interpolate one axis at a time
    for axis in range(k):
        new = {}
        lines = {}
        for pt, v in grid.items():
            key = pt[:axis] + pt[axis + 1:]
            lines.setdefault(key, [0] * (D + 1))[pt[axis]] = v
        for key, vals in lines.items():
            coeffs = _newton_to_monomial(vals)
            for e, c in enumerate(coeffs):
                new[key[:axis] + (e,) + key[axis:]] = c
        grid = new
    total_scale = 1
    for s in scales:
        total_scale *= s
    out = {}
    for e, c in grid.items():
        if c:
            if sum(e) > D:
                raise ReductionError("interpolated determinant exceeds its degree bound")
            out[e + (D - sum(e),)] = _norm(Fraction(c) / total_scale)
    return MultiPoly(out, nx)


def det_poly(M: list, degree: int = None, method: str = "auto", nx: int = None) -> MultiPoly:
    """Exact determinant of a square matrix of x-only polynomials.

    ``method`` is ``"bareiss"``, ``"interpolate"`` (needs ``degree``) or
    ``"auto"``.  An empty matrix has determinant 1.
    """
    n = len(M)
    if n == 0:
        if nx is None:
            raise ContractError("pass nx for an empty matrix")
        return MultiPoly.one(nx)
    if any(len(r) != n for r in M):
        raise ContractError("matrix is not square")
    nxv = M[0][0].nx
    if all(v.is_constant() for r in M for v in r):
        return MultiPoly.constant(det_rational([[v.constant_term() for v in r] for r in M]), nxv)
    if method == "auto":
        method = "bareiss" if n <= BAREISS_LIMIT or degree is None else "interpolate"
    if method == "bareiss":
        return det_bareiss_poly(M)
    if method == "interpolate":
        if degree is None:
            raise ContractError("interpolation needs the determinant degree")
        return det_interpolate(M, degree)
    raise ContractError(f"unknown determinant method {method!r}")
