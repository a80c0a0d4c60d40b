"""Independent reference computations.

Nothing here uses the complex/determinant machinery: degree counts come from
closed formulas, the classical Hessian and Sylvester resultant from plain
determinants, and flex weights from power-series expansions of curve
branches.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Sequence

from mhessian.errors import (
    ContractError,
    DomainError,
    PrecisionError,
    SingularityError,
)
from mhessian.groebner import BudgetExceeded, buchberger, leading
from mhessian.polyring import (
    IdealSpec,
    MultiPoly,
    binomial,
    grevlex_key,
    monomials_of_degree,
)


# ---------------------------------------------------------------------- curves
@dataclass
class CurveSpec:
    """Complete intersection of ``r - 1`` forms in projective ``r``-space."""

    r: int
    forms: list
    degrees: Optional[list] = None
    m: int = 1

    def __post_init__(self):
        if self.r < 2:
            raise ContractError("a curve needs an ambient space of dimension at least 2")
        forms = list(self.forms)
        if len(forms) != self.r - 1:
            raise ContractError(f"need {self.r - 1} forms in dimension {self.r}, got {len(forms)}")
        degs = []
        for F in forms:
            if F.ny or F.nx != self.r + 1:
                raise ContractError(f"form {F} does not live in {self.r + 1} variables")
            if not F or not F.is_homogeneous():
                raise ContractError(f"form {F} is not a nonzero homogeneous polynomial")
            degs.append(F.x_degree())
        if self.degrees is None:
            self.degrees = degs
        elif list(self.degrees) != degs:
            raise ContractError(f"declared degrees {self.degrees} do not match the forms {degs}")
        if any(d < 1 for d in degs):
            raise ContractError("all forms must have positive degree")
        self.forms = forms
        self.degrees = list(self.degrees)

    @property
    def nvars(self) -> int:
        return self.r + 1

    @property
    def degree(self) -> int:
        return math.prod(self.degrees)

    def ideal(self) -> IdealSpec:
        return IdealSpec(self.forms)

    def with_m(self, m: int) -> "CurveSpec":
        return CurveSpec(self.r, self.forms, self.degrees, m)


def plane_curve(F: MultiPoly, m: int = 1) -> CurveSpec:
    return CurveSpec(2, [F], None, m)


@dataclass
class DegreeReport:
    rank_n_plus_1: int
    ambient_degree_a: int
    moduli_degrees_b: list
    total_flex_weight: int
    curve_degree: int = 0
    genus: Optional[int] = None
    plucker_total: int = 0

    def to_json(self) -> dict:
        return {
            "rank_n_plus_1": self.rank_n_plus_1,
            "ambient_degree_a": self.ambient_degree_a,
            "moduli_degrees_b": list(self.moduli_degrees_b),
            "total_flex_weight": self.total_flex_weight,
            "curve_degree": self.curve_degree,
            "genus": self.genus,
            "plucker_total": self.plucker_total,
        }


def rank_formula(r: int, degrees: Sequence[int], m: int) -> int:
    """``sum_J (-1)^|J| C(m - d_J + r, r)``: the number of sections of ``O(m)``."""
    s = len(degrees)
    total = 0
    for j in range(s + 1):
        for J in combinations(range(s), j):
            total += (-1) ** j * binomial(m - sum(degrees[i] for i in J) + r, r)
    return total


def degree_report(curve: CurveSpec, m: int = None) -> DegreeReport:
    """Ranks and degrees of the m-Hessian from closed binomial formulas."""
    m = curve.m if m is None else m
    r, degs = curve.r, curve.degrees
    s = len(degs)
    n1 = rank_formula(r, degs, m)
    c2 = binomial(n1, 2)
    a = n1 * m + c2 * (-r - 1 + sum(degs))
    bs = []
    for j in range(s):
        b = c2
        for k in range(1, s + 1):
            for J in combinations(range(s), k):
                if j in J:
                    b += (-1) ** k * binomial(m - sum(degs[i] for i in J) + r, r)
        bs.append(b)
    deg = math.prod(degs)
    two_g_minus_2 = deg * (sum(degs) - r - 1)
    genus = two_g_minus_2 // 2 + 1
    plucker = n1 * m * deg + c2 * two_g_minus_2
    return DegreeReport(n1, a, bs, a * deg, deg, genus, plucker)


# ---------------------------------------------------------------------- Hessian
def _det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def classical_hessian(F: MultiPoly) -> MultiPoly:
    """Determinant of the 3x3 matrix of second partial derivatives."""
    if F.ny or F.nx != 3:
        raise ContractError("the classical Hessian is implemented for ternary forms")
    if not F.is_homogeneous() or F.x_degree() < 2:
        raise ContractError("expected a homogeneous form of degree at least 2")
    first = [F.partial(i) for i in range(3)]
    M = [[first[i].partial(j) for j in range(3)] for i in range(3)]
    return _det3(M)


# ---------------------------------------------------------------------- resultants
def _binary_coeffs(F: MultiPoly) -> list:
    """Coefficients of ``F(t, 1)`` from ``t^d`` down to ``t^0``."""
    if F.ny or F.nx != 2:
        raise ContractError("expected a binary form")
    if not F or not F.is_homogeneous():
        raise ContractError("expected a nonzero homogeneous binary form")
    d = F.x_degree()
    return [F.coefficient((d - k, k)) for k in range(d + 1)]


def _det_fraction(M: list):
    n = len(M)
    m = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[i][k] -= f * m[c][k]
    return det.numerator if det.denominator == 1 else det


def sylvester_matrix(F0: MultiPoly, F1: MultiPoly) -> list:
    a, b = _binary_coeffs(F0), _binary_coeffs(F1)
    d0, d1 = len(a) - 1, len(b) - 1
    if d0 < 1 or d1 < 1:
        raise ContractError("binary forms must have positive degree")
    n = d0 + d1
    rows = []
    for i in range(d1):
        rows.append([0] * i + a + [0] * (n - d0 - 1 - i))
    for i in range(d0):
        rows.append([0] * i + b + [0] * (n - d1 - 1 - i))
    return rows


def sylvester_resultant(F0: MultiPoly, F1: MultiPoly):
    """Resultant of two binary forms via the Sylvester matrix of ``F_i(t, 1)``."""
    return _det_fraction(sylvester_matrix(F0, F1))


# ---------------------------------------------------------------------- scalars
class QuadExt:
    """Element ``a + b*sqrt(D)`` of a quadratic field over Q."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D: int = -3):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = D

    @classmethod
    def omega(cls) -> "QuadExt":
        """A primitive cube root of unity ``(-1 + sqrt(-3)) / 2``."""
        return cls(Fraction(-1, 2), Fraction(1, 2), -3)

    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise ContractError("quadratic fields differ")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.D)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero in a quadratic field")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.D)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.D)) if self.b else hash(self.a)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, D={self.D})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.D})"


def _inv(x):
    if isinstance(x, QuadExt):
        return x.inverse()
    return Fraction(1) / x


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------------- series
class TruncatedSeries:
    """Power series ``sum_{k <= order} c_k t^k`` known modulo ``t^(order+1)``."""

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Sequence, order: int):
        cs = list(coefficients[: order + 1])
        cs += [0] * (order + 1 - len(cs))
        self.coefficients = cs
        self.order = order

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int, c0=0) -> "TruncatedSeries":
        return cls([c0, 1], order)

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return TruncatedSeries([other], self.order)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries([self.coefficients[k] + o.coefficients[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return TruncatedSeries([c * other for c in self.coefficients], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        va, vb = self.valuation(), other.valuation()
        # t^va * (known to order - va) times t^vb * (...): known to the smaller sum
        ka = self.order + 1 if va is None else va
        kb = other.order + 1 if vb is None else vb
        n = min(self.order + kb, other.order + ka)
        out = [0] * (n + 1)
        if va is not None and vb is not None:
            for i in range(va, min(n, self.order) + 1):
                ai = a[i]
                if not ai:
                    continue
                for j in range(vb, min(n - i, other.order) + 1):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a series")
        out = TruncatedSeries([1], self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coefficients[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = _inv(c0)
        out = [0] * (self.order + 1)
        out[0] = inv0
        a = self.coefficients
        for k in range(1, self.order + 1):
            s = 0
            for j in range(1, k + 1):
                if a[j]:
                    s += a[j] * out[k - j]
            out[k] = -s * inv0
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self * _inv(other)
        return self * other.inverse()

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient; None if zero to this order."""
        for k, c in enumerate(self.coefficients):
            if c:
                return k
        return None

    def shift_down(self, v: int) -> "TruncatedSeries":
        """Divide by ``t^v`` (the first ``v`` coefficients must vanish)."""
        if any(self.coefficients[:v]):
            raise ContractError("series is not divisible by that power of t")
        return TruncatedSeries(self.coefficients[v:], self.order - v)

    def hasse_derivative(self, i: int) -> "TruncatedSeries":
        """``(1/i!) d^i/dt^i``; the result is known to order ``order - i``."""
        cs = [math.comb(k, i) * self.coefficients[k] for k in range(i, self.order + 1)]
        return TruncatedSeries(cs, self.order - i)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients, min(order, self.order))

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return all(self.coefficients[k] == o.coefficients[k] for k in range(n + 1))

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coefficients[:6])
        return f"TruncatedSeries([{shown}{', ...' if self.order > 5 else ''}], order={self.order})"


# ---------------------------------------------------------------------- branches
@dataclass
class Branch:
    """Local parameterization of a plane curve near a smooth point."""

    chart: int
    coords: list  # three series, with coords[chart] == 1
    u_index: int
    v_index: int
    parameter_index: int
    order: int

    @property
    def u(self) -> TruncatedSeries:
        return self.coords[self.u_index]

    @property
    def v(self) -> TruncatedSeries:
        return self.coords[self.v_index]


def _normalize_point(point: Sequence):
    pt = [p if isinstance(p, QuadExt) else Fraction(p) for p in point]
    chart = next((i for i, c in enumerate(pt) if c), None)
    if chart is None:
        raise ContractError("the zero vector is not a projective point")
    inv = _inv(pt[chart])
    return chart, [_simplify(c * inv) for c in pt]


def branch(F: MultiPoly, point: Sequence, order: int) -> Branch:
    """Newton iteration for a branch through a smooth point of a plane curve."""
    if F.ny or F.nx != 3:
        raise ContractError("branches are computed for plane curves")
    if order < 1:
        raise ContractError("order must be positive")
    chart, pt = _normalize_point(point)
    if F.evaluate(pt):
        raise ContractError(f"point {point} is not on the curve")
    others = [i for i in range(3) if i != chart]
    grads = [F.partial(i).evaluate(pt) for i in others]
    if grads[0]:
        solve, param = others[0], others[1]
    elif grads[1]:
        solve, param = others[1], others[0]
    else:
        raise SingularityError(f"point {point} is a singular point of the curve")
    Fs = F.partial(solve)
    coords = [None, None, None]
    coords[chart] = TruncatedSeries([1], order)
    coords[param] = TruncatedSeries([pt[param], 1], order)
    coords[solve] = TruncatedSeries([pt[solve]], order)
    steps = max(1, math.ceil(math.log2(order + 1)) + 1)
    for _ in range(steps):
        val = F.evaluate(coords)
        if isinstance(val, TruncatedSeries) and val.is_zero():
            break
        der = Fs.evaluate(coords)
        if not isinstance(der, TruncatedSeries):
            der = TruncatedSeries([der], order)
        if not isinstance(val, TruncatedSeries):
            val = TruncatedSeries([val], order)
        coords[solve] = coords[solve] - val * der.inverse()
    residual = F.evaluate(coords)
    if isinstance(residual, TruncatedSeries) and not residual.is_zero():
        raise PrecisionError("Newton iteration did not converge to the requested order")
    u_index, v_index = others
    return Branch(chart, coords, u_index, v_index, param, order)


def branch_parameterize(F: MultiPoly, point: Sequence, order: int):
    """Affine chart series ``(u(t), v(t))`` of a branch through a smooth point."""
    b = branch(F, point, order)
    return b.u, b.v


def section_basis(F: MultiPoly, m: int) -> list:
    """Monomials of degree ``m`` forming a basis of the degree-``m`` forms modulo ``F``."""
    ideal = IdealSpec([F])
    piv = ideal.pivot
    d = F.x_degree()
    monos = monomials_of_degree(m, F.nx)
    if piv is not None:
        i, _ = piv
        return [e for e in monos if e[i] < d]
    lead = max(F.terms, key=grevlex_key)
    return [e for e in monos if not all(a >= b for a, b in zip(e, lead))]


def _series_sections(F: MultiPoly, m: int, point, order: int):
    b = branch(F, point, order)
    out = []
    for e in section_basis(F, m):
        s = TruncatedSeries([1], order)
        for i, k in enumerate(e):
            if k:
                s = s * b.coords[i] ** k
        out.append(s)
    return out


def vanishing_sequence(F: MultiPoly, m: int, point, order: int = 64) -> list:
    """Orders of vanishing ``a_0 < ... < a_n`` of degree-``m`` sections at ``point``."""
    sections = _series_sections(F, m, point, order)
    width = min(s.order for s in sections) + 1
    rows = [(list(s.coefficients) + [0] * width)[:width] for s in sections]
    orders = []
    for _ in range(len(rows)):
        best = None
        for idx, r in enumerate(rows):
            v = next((k for k, c in enumerate(r) if c), None)
            if v is not None and (best is None or v < best[0]):
                best = (v, idx)
        if best is None:
            raise PrecisionError("sections are dependent to the given order")
        v, idx = best
        piv = rows.pop(idx)
        orders.append(v)
        inv = _inv(piv[v])
        for r in rows:
            if r[v]:
                f = r[v] * inv
                for k in range(v, len(r)):
                    if piv[k]:
                        r[k] = r[k] - f * piv[k]
    if orders[-1] > width - 4:
        raise PrecisionError("vanishing orders too close to the truncation bound")
    return sorted(orders)


def wronskian_weight(F: MultiPoly, m: int, point, order: int = 64, margin: int = 3) -> int:
    """Valuation at the point of the Wronskian of the degree-``m`` sections."""
    sections = _series_sections(F, m, point, order)
    n1 = len(sections)
    order = min(s.order for s in sections)
    # Hasse derivatives give the same valuation with smaller numbers
    M = [[s.hasse_derivative(i) for s in sections] for i in range(n1)]
    prec = order + 1 - (n1 - 1)
    M = [[e.truncate(prec - 1) for e in row] for row in M]
    total = 0
    rows = list(range(n1))
    cols = list(range(n1))
    while rows:
        best = None
        for i in rows:
            for j in cols:
                v = M[i][j].valuation()
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None or best[0] > prec - 1 - margin:
            raise PrecisionError(
                f"Wronskian valuation not certified at order {order}; retry with a larger order"
            )
        v, pi, pj = best
        total += v
        rows.remove(pi)
        cols.remove(pj)
        p = M[pi][pj].shift_down(v)
        pinv = p.inverse()
        for i in rows:
            a = M[i][pj]
            if a.is_zero():
                continue
            q = a.shift_down(v) * pinv
            for j in cols:
                M[i][j] = (M[i][j] - q * M[pi][j]).truncate(prec - 1)
    return total


def fermat_flexes() -> list:
    """The nine points of ``x0 x1 x2 = 0`` on the Fermat cubic (over Q(sqrt(-3)))."""
    w = QuadExt.omega()
    roots = [QuadExt(1), w, w * w]
    pts = []
    for zero in range(3):
        a, b = [i for i in range(3) if i != zero]
        for z in roots:
            p = [QuadExt(0)] * 3
            p[a] = QuadExt(1)
            p[b] = -z
            pts.append(p)
    return pts


# ---------------------------------------------------------------------- smoothness
def jacobian_minors(curve: CurveSpec) -> list:
    forms = curve.forms
    nx = curve.nvars
    J = [[F.partial(i) for i in range(nx)] for F in forms]
    s = len(forms)
    out = []
    for cols in combinations(range(nx), s):
        out.append(_det_poly_leibniz([[J[i][c] for c in cols] for i in range(s)]))
    return [p for p in out if p]


def _det_poly_leibniz(M):
    n = len(M)
    total = None
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        t = M[0][perm[0]]
        for i in range(1, n):
            t = t * M[i][perm[i]]
        t = t if sign > 0 else -t
        total = t if total is None else total + t
    return total


def smoothness_check(curve: CurveSpec, budget: int = 2000) -> Optional[bool]:
    """True if smooth, False if singular, None if the Groebner budget ran out."""
    gens = [F.terms for F in curve.forms] + [p.terms for p in jacobian_minors(curve)]
    try:
        gb = buchberger(gens, curve.nvars, budget=budget)
    except BudgetExceeded:
        return None
    leads = [leading(g)[0] for g in gb]
    for i in range(curve.nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leads):
            return False
    return True


def random_form(nx: int, d: int, rng: random.Random, lo: int = -3, hi: int = 3) -> MultiPoly:
    terms = {e: rng.randint(lo, hi) for e in monomials_of_degree(d, nx)}
    return MultiPoly(terms, nx)


def random_smooth_plane_curve(d: int, seed: int, lo: int = -3, hi: int = 3,
                              max_tries: int = 50) -> MultiPoly:
    """A seeded random ternary form of degree ``d`` that passes the smoothness check."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        F = random_form(3, d, rng, lo, hi)
        if F and F.is_homogeneous(d) and smoothness_check(plane_curve(F)) is True:
            return F
    raise DomainError("could not draw a smooth curve")
