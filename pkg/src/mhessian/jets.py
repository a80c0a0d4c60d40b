"""Jets in the truncated algebra ``A[y]/(y)^{n+1}``.

A jet is a polynomial in ``x_0..x_r, y_0..y_r`` with y-degree at most ``n``;
the monomial ``y^alpha`` plays the role of ``(dx)^alpha``.  Taylor
coefficients use divided powers, so the jet of ``F`` is ``F(x + y)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mhessian.errors import ContractError, DomainError, LayoutError
from mhessian.polyring import MultiPoly, _norm, monomials_of_degree


@dataclass(frozen=True)
class EulerParams:
    m: int
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"jet order must be non-negative, got {self.n}")


class JetElement:
    """A bigraded polynomial with an order bound and a bundle twist."""

    __slots__ = ("poly", "order_bound", "twist")

    def __init__(self, poly: MultiPoly, order_bound: int, twist: int = None):
        if not poly.ny:
            poly = poly.with_jet_vars()
        if poly.ny != poly.nx:
            raise LayoutError("jets need one y variable per x variable")
        if order_bound < 0:
            raise DomainError("order bound must be non-negative")
        if poly.y_degree() > order_bound:
            raise ContractError(
                f"y-degree {poly.y_degree()} exceeds order bound {order_bound}"
            )
        self.poly = poly
        self.order_bound = order_bound
        self.twist = twist

    @classmethod
    def truncating(cls, poly: MultiPoly, order_bound: int, twist: int = None):
        if not poly.ny:
            poly = poly.with_jet_vars()
        return cls(poly.truncate_y(order_bound), order_bound, twist)

    @property
    def nx(self) -> int:
        return self.poly.nx

    def component(self, j: int) -> "JetElement":
        return JetElement(self.poly.y_component(j), self.order_bound, self.twist)

    def top(self) -> "JetElement":
        return self.component(self.order_bound)

    def components(self) -> list:
        return [self.component(j) for j in range(self.order_bound + 1)]

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def is_homogeneous(self) -> bool:
        """Every term has x-degree + y-degree equal to the twist."""
        degs = {sum(e) for e in self.poly.terms}
        if not degs:
            return True
        if self.twist is None:
            return len(degs) == 1
        return degs == {self.twist}

    def with_bound(self, n: int) -> "JetElement":
        return JetElement.truncating(self.poly, n, self.twist)

    def _twist_with(self, other: "JetElement"):
        if self.twist == other.twist:
            return self.twist
        if not self:
            return other.twist
        if not other:
            return self.twist
        return None

    def __add__(self, other):
        if not isinstance(other, JetElement):
            return NotImplemented
        n = min(self.order_bound, other.order_bound)
        return JetElement.truncating(self.poly + other.poly, n, self._twist_with(other))

    def __sub__(self, other):
        if not isinstance(other, JetElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return JetElement(-self.poly, self.order_bound, self.twist)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return JetElement(self.poly.scalar_mul(other), self.order_bound, self.twist)
        if isinstance(other, (JetElement, MultiPoly)):
            return truncated_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, JetElement):
            return self.poly == other.poly
        if isinstance(other, MultiPoly):
            return self.poly == (other if other.ny else other.with_jet_vars())
        if isinstance(other, (int, Fraction)):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"JetElement({self.poly}, n={self.order_bound}, twist={self.twist})"

    def __str__(self):
        return str(self.poly)


def _as_jet(w, order_bound: int = None) -> JetElement:
    if isinstance(w, JetElement):
        return w
    if isinstance(w, MultiPoly):
        p = w if w.ny else w.with_jet_vars()
        n = p.y_degree() if order_bound is None else order_bound
        return JetElement(p, max(n, 0))
    raise TypeError(f"cannot interpret {type(w).__name__} as a jet")


def _check_form(F: MultiPoly):
    if F.ny:
        raise ContractError("expected an x-only polynomial")
    if not F.is_homogeneous():
        raise ContractError(f"{F} is not homogeneous")


def polar(F: MultiPoly, j: int) -> JetElement:
    """Degree-``j`` Taylor part ``sum_{|alpha|=j} taylor_coefficient(F, alpha) y^alpha``."""
    _check_form(F)
    if j < 0:
        raise DomainError("polar order must be non-negative")
    nx = F.nx
    d = F.x_degree()
    out = {}
    if d >= j:
        for alpha in monomials_of_degree(j, nx):
            for e, c in F.taylor_coefficient(alpha).terms.items():
                out[e + alpha] = c
    return JetElement(MultiPoly._raw(out, nx, nx), j, d if d >= 0 else None)


def universal_jet(F: MultiPoly, n: int) -> JetElement:
    """``F(x + y)`` truncated at y-degree ``n``."""
    _check_form(F)
    if n < 0:
        raise DomainError("jet order must be non-negative")
    nx = F.nx
    out = {}
    for e, c in F.terms.items():
        _expand_shift(e, c, n, out)
    d = F.x_degree()
    return JetElement(MultiPoly._raw({k: v for k, v in out.items() if v}, nx, nx), n,
                      d if d >= 0 else None)


def _expand_shift(e: tuple, c, n: int, out: dict):
    # (x+y)^e = prod_i sum_{a_i} C(e_i, a_i) x_i^{e_i-a_i} y_i^{a_i}, kept for |a| <= n
    partial = [((), (), c, 0)]
    for k in e:
        nxt = []
        for xs, ys, cc, deg in partial:
            for a in range(0, min(k, n - deg) + 1):
                nxt.append((xs + (k - a,), ys + (a,), cc * math.comb(k, a), deg + a))
        partial = nxt
    for xs, ys, cc, _ in partial:
        key = xs + ys
        out[key] = out.get(key, 0) + cc


def delta(F: MultiPoly, order_bound: int) -> JetElement:
    """``F(x + y) - F(x)`` truncated at y-degree ``order_bound``."""
    j = universal_jet(F, order_bound)
    return JetElement(j.poly.truncate_y(order_bound) - F.with_jet_vars(), order_bound, j.twist)


def truncated_mul(a, b) -> JetElement:
    """Product in ``A[y]/(y)^{n+1}``; the bound is the smaller of the operands'."""
    if isinstance(a, MultiPoly) and not a.ny:
        b = _as_jet(b)
        return JetElement(b.poly * a.with_jet_vars(), b.order_bound, _add_twist(b.twist, a))
    if isinstance(b, MultiPoly) and not b.ny:
        a = _as_jet(a)
        return JetElement(a.poly * b.with_jet_vars(), a.order_bound, _add_twist(a.twist, b))
    a = _as_jet(a)
    b = _as_jet(b)
    n = min(a.order_bound, b.order_bound)
    pa, pb = a.poly.truncate_y(n), b.poly.truncate_y(n)
    nx = pa.nx
    out: dict = {}
    for ea, ca in pa.terms.items():
        ya = sum(ea[nx:])
        for eb, cb in pb.terms.items():
            if ya + sum(eb[nx:]) > n:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    tw = None if a.twist is None or b.twist is None else a.twist + b.twist
    return JetElement(MultiPoly._raw({k: _norm(v) for k, v in out.items() if v}, nx, nx), n, tw)


def _add_twist(t, p: MultiPoly):
    if t is None or not p or not p.is_homogeneous():
        return None
    return t + p.x_degree()


def _contract_terms(terms, nx: int) -> dict:
    out: dict = {}
    for e, c in terms.items():
        for i in range(nx):
            b = e[nx + i]
            if b:
                k = list(e)
                k[i] += 1
                k[nx + i] = b - 1
                k = tuple(k)
                out[k] = out.get(k, 0) + c * b
    return {k: v for k, v in out.items() if v}


def euler_contract(w) -> JetElement:
    """``y^beta -> sum_i beta_i x_i y^(beta - e_i)``, extended linearly."""
    w = _as_jet(w)
    nx = w.nx
    return JetElement(MultiPoly._raw(_contract_terms(w.poly.terms, nx), nx, nx),
                      w.order_bound, w.twist)


def euler_contract_power(w, k: int) -> JetElement:
    for _ in range(k):
        w = euler_contract(w)
    return _as_jet(w)


def euler_dual_map(w, params: EulerParams) -> JetElement:
    """Degree-``j`` component ``eps(w_{j+1}) + (j - m) w_j`` for ``j < n``."""
    w = _as_jet(w, params.n)
    if w.order_bound != params.n:
        if w.poly.y_degree() > params.n:
            raise ContractError("jet order does not match the Euler parameters")
        w = JetElement(w.poly, params.n, w.twist)
    n, m = params.n, params.m
    nx = w.nx
    if n == 0:
        return JetElement(MultiPoly.zero(nx, nx), 0, w.twist)
    out = _contract_terms(w.poly.terms, nx)
    for e, c in w.poly.terms.items():
        j = sum(e[nx:])
        if j < n and j != m:
            out[e] = out.get(e, 0) + (j - m) * c
    res = MultiPoly._raw({k: _norm(v) for k, v in out.items() if v}, nx, nx)
    return JetElement(res, n - 1, w.twist)


def lambda_coeff(m: int, n: int, j: int) -> Fraction:
    """``prod_{i=n-j}^{n-1} 1/(m - i)``."""
    if j < 0 or j > n:
        raise DomainError(f"index j={j} outside 0..{n}")
    if not (m < n - j or m >= n):
        raise DomainError(f"lambda_{j}({m},{n}) is undefined")
    out = Fraction(1)
    for i in range(n - j, n):
        out /= m - i
    return _norm(out)


def phi_inverse(w_top, params: EulerParams) -> JetElement:
    """The unique kernel element of the Euler dual map with top part ``w_top``."""
    m, n = params.m, params.n
    if not (m < 0 or m >= n):
        raise DomainError(f"top projection is not invertible for m={m}, n={n}")
    w = _as_jet(w_top, n)
    if w and {sum(e[w.nx:]) for e in w.poly.terms} != {n}:
        raise ContractError("phi_inverse expects an element of pure y-degree n")
    total = MultiPoly.zero(w.nx, w.nx)
    cur = w
    for j in range(n + 1):
        total = total + cur.poly.scalar_mul(lambda_coeff(m, n, j))
        cur = euler_contract(cur)
    return JetElement(total, n, w.twist)


def t_map(w_bottom, params: EulerParams) -> JetElement:
    """``sum_{i<=m} eps^i(w)/i!`` for ``w`` of pure y-degree ``m < n``."""
    m, n = params.m, params.n
    if not 0 <= m < n:
        raise DomainError(f"t_map needs 0 <= m < n, got m={m}, n={n}")
    w = _as_jet(w_bottom, n)
    if w and {sum(e[w.nx:]) for e in w.poly.terms} != {m}:
        raise ContractError("t_map expects an element of pure y-degree m")
    total = MultiPoly.zero(w.nx, w.nx)
    cur = w
    for i in range(m + 1):
        total = total + cur.poly.scalar_mul(Fraction(1, math.factorial(i)))
        cur = euler_contract(cur)
    return JetElement(total, n, w.twist)


def top_projection(w) -> JetElement:
    return _as_jet(w).top()
