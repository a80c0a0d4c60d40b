# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: modular elimination on int64 buffers, multimodular
integer determinants, and sparse polynomial products.

Signatures and results match :mod:`mhessian._pykernels` exactly.
"""
from fractions import Fraction

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from mhessian._pykernels import modular_primes

BACKEND = "cython"


cdef inline int64_t _inv(int64_t a, int64_t p):
    # extended Euclid; a in (0, p)
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int64_t* _load(list rows, Py_ssize_t nrows, Py_ssize_t ncols, int64_t p) except NULL:
    cdef int64_t* buf = <int64_t*> malloc(max(nrows * ncols, 1) * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef list r
    for i in range(nrows):
        r = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = <int64_t> (r[j] % p)
    return buf


def poly_mul(dict a, dict b):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ea, eb
    cdef Py_ssize_t k, n
    cdef list tmp
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            tmp = [None] * n
            for k in range(n):
                tmp[k] = <long> ea[k] + <long> eb[k]
            e = tuple(tmp)
            c = out.get(e)
            if c is None:
                out[e] = ca * cb
            else:
                out[e] = c + ca * cb
    res = {}
    for e, c in out.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            res[e] = c
    return res


def rank_profile_mod_p(list rows, Py_ssize_t ncols, int64_t p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return []
    cdef int64_t* m = _load(rows, nrows, ncols, p)
    cdef char* used = <char*> malloc(nrows)
    cdef Py_ssize_t i, c, k, piv, npiv = 0
    cdef int64_t inv, f
    cdef int64_t* prow
    cdef int64_t* ri
    pivots = []
    try:
        for i in range(nrows):
            used[i] = 0
        for c in range(ncols):
            piv = -1
            for i in range(nrows):
                if not used[i] and m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            used[piv] = 1
            pivots.append(c)
            npiv += 1
            prow = m + piv * ncols
            inv = _inv(prow[c], p)
            for i in range(nrows):
                ri = m + i * ncols
                if used[i] or ri[c] == 0:
                    continue
                f = ri[c] * inv % p
                for k in range(c, ncols):
                    if prow[k] != 0:
                        ri[k] = (ri[k] - f * prow[k]) % p
                        if ri[k] < 0:
                            ri[k] += p
            if npiv == nrows:
                break
    finally:
        free(m)
        free(used)
    return pivots


cdef int64_t _det_buf(int64_t* m, Py_ssize_t n, int64_t p):
    cdef int64_t det = 1, inv, f, tmp
    cdef Py_ssize_t c, i, k, piv
    cdef int64_t* prow
    cdef int64_t* ri
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if m[i * n + c] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            for k in range(n):
                tmp = m[c * n + k]
                m[c * n + k] = m[piv * n + k]
                m[piv * n + k] = tmp
            det = p - det if det != 0 else 0
        prow = m + c * n
        det = det * prow[c] % p
        inv = _inv(prow[c], p)
        for i in range(c + 1, n):
            ri = m + i * n
            if ri[c] != 0:
                f = ri[c] * inv % p
                for k in range(c, n):
                    if prow[k] != 0:
                        ri[k] = (ri[k] - f * prow[k]) % p
                        if ri[k] < 0:
                            ri[k] += p
    return det % p


def det_mod_p(list rows, int64_t p):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1 % p
    cdef int64_t* m = _load(rows, n, n, p)
    try:
        return _det_buf(m, n, p)
    finally:
        free(m)


def det_bareiss_int(list rows):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t k, i, j
    cdef list rk, ri
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
        rk = m[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = m[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * m[n - 1][n - 1]


def det_integer(list rows):
    """Exact integer determinant by CRT over 31-bit primes (Hadamard bound)."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j
    cdef int64_t p
    cdef list r
    cdef int64_t* m
    if n == 0:
        return 1
    bits = 2
    for row in rows:
        s = 0
        for x in row:
            s += x * x
        if s == 0:
            return 0
        bits += (s.bit_length() + 1) // 2
    nprimes = bits // 30 + 1
    primes = modular_primes(nprimes)
    m = <int64_t*> malloc(n * n * sizeof(int64_t))
    if m == NULL:
        raise MemoryError()
    residue = 0
    modulus = 1
    try:
        for q in primes:
            p = q
            for i in range(n):
                r = rows[i]
                for j in range(n):
                    m[i * n + j] = <int64_t> (r[j] % q)
            d = _det_buf(m, n, p)
            # incremental CRT
            t = ((d - residue) * pow(modulus, -1, q)) % q
            residue += modulus * t
            modulus *= q
    finally:
        free(m)
    if residue > modulus // 2:
        residue -= modulus
    return residue
