"""Dense univariate polynomials over GF(p) and sampling of curve points.

Polynomials are coefficient lists, constant term first, with no trailing
zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations

import random

from mhessian import kernels
from mhessian.errors import DomainError, ModularError


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod(a, p: int) -> list:
    return trim([x % p for x in a])


def sub(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([x % p for x in out])


def divmod_poly(a: list, b: list, p: int):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return trim(q), trim(a[:db] if db else [])


def rem(a: list, b: list, p: int) -> list:
    return divmod_poly(a, b, p)[1]


def monic(a: list, p: int) -> list:
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def gcd(a: list, b: list, p: int) -> list:
    a, b = pmod(a, p), pmod(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod(base: list, e: int, f: list, p: int) -> list:
    result = [1]
    base = rem(base, f, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), f, p)
    return result


def evaluate(a: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def roots(a: list, p: int, rng: random.Random) -> list:
    """All roots in GF(p) of ``a`` (an odd prime), sorted."""
    a = pmod(a, p)
    if not a:
        raise ModularError("every element is a root of the zero polynomial")
    if len(a) == 1:
        return []
    split = gcd(sub(powmod([0, 1], p, a, p), [0, 1], p), a, p)
    found = []
    _split(split, p, rng, found)
    return sorted(found)


def _split(f: list, p: int, rng: random.Random, out: list):
    deg = len(f) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append((-f[0]) * pow(f[1], p - 2, p) % p)
        return
    while True:
        delta = rng.randrange(p)
        h = sub(powmod([delta, 1], (p - 1) // 2, f, p), [1], p)
        g = gcd(h, f, p)
        if 0 < len(g) - 1 < deg:
            _split(g, p, rng, out)
            _split(divmod_poly(f, g, p)[0], p, rng, out)
            return


def interpolate(xs: list, ys: list, p: int) -> list:
    """Lagrange interpolation through ``(xs[i], ys[i])`` over GF(p)."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j != i:
                num = mul(num, [(-xs[j]) % p, 1], p)
                den = den * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(den, p - 2, p) % p
        for k, c in enumerate(num):
            out[k] = (out[k] + scale * c) % p
    return trim(out)


# ---------------------------------------------------------------------- curve points
def _specialize(F, fixed: dict, free: int, p: int) -> list:
    """Univariate polynomial in variable ``free`` after fixing the others mod p."""
    coeffs: dict = {}
    for e, c in F.terms.items():
        if hasattr(c, "denominator") and c.denominator != 1:
            den = c.denominator % p
            if den == 0:
                raise ModularError(f"denominator divisible by {p}")
            v = c.numerator * pow(den, p - 2, p) % p
        else:
            v = int(c) % p
        for i, k in enumerate(e):
            if i != free and k:
                v = v * pow(fixed[i], k, p) % p
        coeffs[e[free]] = (coeffs.get(e[free], 0) + v) % p
    deg = max(coeffs, default=0)
    return trim([coeffs.get(k, 0) for k in range(deg + 1)])


def _bivariate_resultant_at(forms, fixed: dict, elim: int, p: int, formal: list) -> int:
    polys = [_specialize(F, fixed, elim, p) for F in forms]
    (a, da), (b, db) = zip(polys, formal)
    a = a + [0] * (da + 1 - len(a))
    b = b + [0] * (db + 1 - len(b))
    n = da + db
    if n == 0:
        return 1
    rows = []
    for i in range(db):
        row = [0] * n
        for k in range(da + 1):
            row[i + k] = a[da - k]
        rows.append(row)
    for i in range(da):
        row = [0] * n
        for k in range(db + 1):
            row[i + k] = b[db - k]
        rows.append(row)
    return kernels.det_mod_p(rows, p)


def sample_curve_point(forms, nvars: int, p: int, rng: random.Random,
                       max_tries: int = 200) -> tuple:
    """A point of the curve ``forms = 0`` over GF(p) in the chart ``x_last = 1``.

    Supports plane curves and complete intersections in 3-space.
    """
    if nvars == 3 and len(forms) == 1:
        return _sample_plane(forms[0], p, rng, max_tries)
    if nvars == 4 and len(forms) == 2:
        return _sample_space(forms, p, rng, max_tries)
    raise DomainError("modular point sampling supports plane and space curves only")


def _sample_plane(F, p, rng, max_tries):
    for _ in range(max_tries):
        a = rng.randrange(p)
        g = _specialize(F, {0: a, 2: 1}, 1, p)
        if len(g) < 2:
            continue
        rs = roots(g, p, rng)
        if rs:
            return (a, rs[rng.randrange(len(rs))], 1)
    raise ModularError("no curve point found over the prime field")


def _sample_space(forms, p, rng, max_tries):
    F1, F2 = forms
    formal = [max(e[2] for e in F.terms) for F in forms]
    bound = F1.x_degree() * F2.x_degree()
    for _ in range(max_tries):
        a = rng.randrange(p)
        xs = list(range(bound + 1))
        ys = [_bivariate_resultant_at(forms, {0: a, 1: t, 3: 1}, 2, p, formal) for t in xs]
        R = interpolate(xs, ys, p)
        if len(R) < 2:
            continue
        for b in roots(R, p, rng):
            g1 = _specialize(F1, {0: a, 1: b, 3: 1}, 2, p)
            g2 = _specialize(F2, {0: a, 1: b, 3: 1}, 2, p)
            g = gcd(g1, g2, p)
            if len(g) >= 2:
                zs = roots(g, p, rng)
                if zs:
                    return (a, b, zs[0], 1)
    raise ModularError("no curve point found over the prime field")
