"""Exact sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` lives in ``Q[x_0..x_{nx-1}, y_0..y_{ny-1}]``; the ``y``
block is only present for jet computations.  Coefficients are Python ints
when integral and :class:`fractions.Fraction` otherwise, so equality of term
maps is structural equality of polynomials.
"""
from __future__ import annotations

import enum
import heapq
import json
import math
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Iterable, Sequence, Union

from mhessian import kernels
from mhessian.errors import (
    ContractError,
    LayoutError,
    ModularError,
    ParseError,
    ReductionError,
)

Scalar = Union[int, Fraction]
Exponent = tuple


def scalar(c) -> Scalar:
    """Coerce ``c`` to the canonical exact scalar (int if integral)."""
    if type(c) is int:
        return c
    if isinstance(c, bool):
        return int(c)
    f = c if type(c) is Fraction else Fraction(c)
    return f.numerator if f.denominator == 1 else f


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def grevlex_key(e: Exponent):
    """Sort key; larger key means larger monomial in graded reverse lex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _heap_key(e: Exponent):
    return (-sum(e), tuple(reversed(e)))


def monomials_of_degree(d: int, nvars: int) -> list:
    """Exponent vectors of total degree ``d``, in descending lex order."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomials_up_to(n: int, nvars: int) -> list:
    """All exponents of degree ``0..n``, grouped by increasing degree."""
    out = []
    for d in range(n + 1):
        out.extend(monomials_of_degree(d, nvars))
    return out


def binomial(a: int, b: int) -> int:
    """``C(a, b)`` with the convention ``C(a, b) = 0`` if ``a < b`` or ``b < 0``."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


class MultiPoly:
    """Immutable sparse polynomial; see the module docstring for the layout."""

    __slots__ = ("_terms", "nx", "ny", "_hash")

    def __init__(self, terms=None, nx: int = 3, ny: int = 0):
        n = nx + ny
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                e = tuple(int(k) for k in e)
                if len(e) != n or any(k < 0 for k in e):
                    raise LayoutError(f"exponent {e} does not fit layout ({nx}, {ny})")
                c = scalar(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: _norm(c) for e, c in clean.items() if c}
        self._terms = clean
        self.nx = nx
        self.ny = ny
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nx: int, ny: int) -> "MultiPoly":
        p = object.__new__(cls)
        p._terms = terms
        p.nx = nx
        p.ny = ny
        p._hash = None
        return p

    # ------------------------------------------------------------------ construction
    @classmethod
    def zero(cls, nx: int, ny: int = 0) -> "MultiPoly":
        return cls._raw({}, nx, ny)

    @classmethod
    def constant(cls, c, nx: int, ny: int = 0) -> "MultiPoly":
        c = scalar(c)
        return cls._raw({(0,) * (nx + ny): c} if c else {}, nx, ny)

    @classmethod
    def one(cls, nx: int, ny: int = 0) -> "MultiPoly":
        return cls.constant(1, nx, ny)

    @classmethod
    def monomial(cls, exps, c=1, nx: int = None, ny: int = 0) -> "MultiPoly":
        exps = tuple(exps)
        if nx is None:
            nx = len(exps) - ny
        return cls({exps: c}, nx, ny)

    @classmethod
    def var(cls, i: int, nx: int, ny: int = 0) -> "MultiPoly":
        e = [0] * (nx + ny)
        e[i] = 1
        return cls._raw({tuple(e): 1}, nx, ny)

    @classmethod
    def y_var(cls, i: int, nx: int) -> "MultiPoly":
        return cls.var(nx + i, nx, nx)

    # ------------------------------------------------------------------ accessors
    @property
    def nvars(self) -> int:
        return self.nx + self.ny

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def layout(self):
        return (self.nx, self.ny)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, exps) -> Scalar:
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def x_degree(self) -> int:
        """Largest total x-degree of a term; -1 for the zero polynomial."""
        nx = self.nx
        return max((sum(e[:nx]) for e in self._terms), default=-1)

    def y_degree(self) -> int:
        nx = self.nx
        return max((sum(e[nx:]) for e in self._terms), default=-1)

    def min_y_degree(self) -> int:
        nx = self.nx
        return min((sum(e[nx:]) for e in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def bidegrees(self) -> set:
        nx = self.nx
        return {(sum(e[:nx]), sum(e[nx:])) for e in self._terms}

    def is_homogeneous(self, degree: int = None) -> bool:
        """True iff all terms share x-degree ``degree`` (any common one if None)."""
        nx = self.nx
        degs = {sum(e[:nx]) for e in self._terms}
        if not degs:
            return True
        if degree is None:
            return len(degs) == 1
        return degs == {degree}

    # ------------------------------------------------------------------ arithmetic
    def _check(self, other: "MultiPoly"):
        if self.nx != other.nx or self.ny != other.ny:
            raise LayoutError(
                f"layout mismatch: ({self.nx}, {self.ny}) vs ({other.nx}, {other.ny})"
            )

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nx, self.ny)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self.nx, self.ny)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()}, self.nx, self.ny)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scalar_mul(self, c) -> "MultiPoly":
        c = scalar(c)
        if not c:
            return MultiPoly.zero(self.nx, self.ny)
        if c == 1:
            return self
        return MultiPoly._raw(
            {e: _norm(v * c) for e, v in self._terms.items()}, self.nx, self.ny
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return MultiPoly.zero(self.nx, self.ny)
        return MultiPoly._raw(kernels.poly_mul(self._terms, other._terms), self.nx, self.ny)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.nx, self.ny)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps, c=1) -> "MultiPoly":
        c = scalar(c)
        out = {}
        for e, v in self._terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = _norm(v * c)
        return MultiPoly._raw(out, self.nx, self.ny) if c else MultiPoly.zero(self.nx, self.ny)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nx == other.nx and self.ny == other.ny and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            c = scalar(other)
            if not c:
                return not self._terms
            return self._terms == {(0,) * self.nvars: c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nx, self.ny, frozenset(self._terms.items())))
        return self._hash

    # ------------------------------------------------------------------ calculus
    def partial(self, i: int) -> "MultiPoly":
        """Formal partial derivative in variable ``i`` (x's first, then y's)."""
        if not 0 <= i < self.nvars:
            raise LayoutError(f"variable index {i} out of range")
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return MultiPoly._raw(out, self.nx, self.ny)

    def taylor_coefficient(self, alpha) -> "MultiPoly":
        """``(1/alpha!) d^alpha p``; the coefficient of ``y^alpha`` in ``p(x+y)``."""
        if self.ny:
            raise ContractError("taylor_coefficient expects an x-only polynomial")
        alpha = tuple(alpha)
        if len(alpha) != self.nx:
            raise LayoutError("multi-index length does not match")
        out = {}
        for e, c in self._terms.items():
            if all(b >= a for a, b in zip(alpha, e)):
                m = 1
                for a, b in zip(alpha, e):
                    if a:
                        m *= math.comb(b, a)
                out[tuple(b - a for a, b in zip(alpha, e))] = c * m
        return MultiPoly._raw(out, self.nx, 0)

    # ------------------------------------------------------------------ structure
    def y_component(self, j: int) -> "MultiPoly":
        nx = self.nx
        return MultiPoly._raw(
            {e: c for e, c in self._terms.items() if sum(e[nx:]) == j}, self.nx, self.ny
        )

    def truncate_y(self, n: int) -> "MultiPoly":
        nx = self.nx
        return MultiPoly._raw(
            {e: c for e, c in self._terms.items() if sum(e[nx:]) <= n}, self.nx, self.ny
        )

    def y_coefficients(self) -> dict:
        """Split as ``sum_alpha c_alpha(x) y^alpha``; returns ``{alpha: c_alpha}``."""
        nx = self.nx
        groups: dict = {}
        for e, c in self._terms.items():
            groups.setdefault(e[nx:], {})[e[:nx]] = c
        return {a: MultiPoly._raw(t, nx, 0) for a, t in groups.items()}

    def with_jet_vars(self, ny: int = None) -> "MultiPoly":
        """Embed an x-only polynomial into the layout with ``ny`` jet variables."""
        if self.ny:
            raise LayoutError("polynomial already carries jet variables")
        ny = self.nx if ny is None else ny
        pad = (0,) * ny
        return MultiPoly._raw({e + pad: c for e, c in self._terms.items()}, self.nx, ny)

    def x_only(self) -> "MultiPoly":
        """Drop the jet block; every term must have y-degree 0."""
        nx = self.nx
        out = {}
        for e, c in self._terms.items():
            if any(e[nx:]):
                raise LayoutError("polynomial involves jet variables")
            out[e[:nx]] = c
        return MultiPoly._raw(out, nx, 0)

    # ------------------------------------------------------------------ evaluation
    def evaluate(self, point: Sequence):
        """Evaluate at ``point``; values may be scalars or any ring elements."""
        if len(point) != self.nvars:
            raise LayoutError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0
        cache = {}
        for e, c in self._terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    pw = cache.get((i, k))
                    if pw is None:
                        pw = point[i] ** k
                        cache[(i, k)] = pw
                    t = t * pw
            total = total + t
        if isinstance(total, Fraction):
            return _norm(total)
        return total

    def evaluate_mod_p(self, point: Sequence[int], prime: int) -> int:
        if len(point) != self.nvars:
            raise LayoutError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0
        for e, c in self._terms.items():
            if type(c) is Fraction:
                den = c.denominator % prime
                if den == 0:
                    raise ModularError(f"denominator {c.denominator} divisible by {prime}")
                t = c.numerator * pow(den, prime - 2, prime) % prime
            else:
                t = c % prime
            for i, k in enumerate(e):
                if k:
                    t = t * pow(point[i], k, prime) % prime
            total += t
        return total % prime

    def substitute(self, values: Sequence) -> "MultiPoly":
        """Compose with ``values`` (one polynomial per variable, common layout)."""
        if len(values) != self.nvars:
            raise LayoutError("need one value per variable")
        polys = [v for v in values if isinstance(v, MultiPoly)]
        if not polys:
            raise LayoutError("substitute needs at least one polynomial value")
        nx, ny = polys[0].nx, polys[0].ny
        vals = [v if isinstance(v, MultiPoly) else MultiPoly.constant(v, nx, ny) for v in values]
        cache = {}
        total = MultiPoly.zero(nx, ny)
        for e, c in self._terms.items():
            t = MultiPoly.constant(c, nx, ny)
            for i, k in enumerate(e):
                if k:
                    pw = cache.get((i, k))
                    if pw is None:
                        pw = vals[i] ** k
                        cache[(i, k)] = pw
                    t = t * pw
            total = total + t
        return total

    # ------------------------------------------------------------------ text / json
    def var_names(self) -> list:
        return [f"x{i}" for i in range(self.nx)] + [f"y{i}" for i in range(self.ny)]

    def to_str(self, names: Sequence[str] = None) -> str:
        return format_poly(self, names)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, nx={self.nx}, ny={self.ny})"

    def to_json(self) -> list:
        return [
            {"exponents": list(e), "coeff": str(Fraction(c))} for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list, nx: int, ny: int = 0) -> "MultiPoly":
        return cls({tuple(t["exponents"]): Fraction(t["coeff"]) for t in data}, nx, ny)


def format_poly(p: MultiPoly, names: Sequence[str] = None) -> str:
    names = list(names) if names is not None else p.var_names()
    if not p._terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------- parsing
_MINUS = "-−"


def parse_poly(text: str, nx: int = None, ny: int = 0, names: Sequence[str] = None,
               line: int = None) -> MultiPoly:
    """Parse ``c*x0^a*x1^b ± ...`` into a :class:`MultiPoly`.

    ``names`` fixes the variable order; by default ``x0..x{nx-1}`` followed by
    ``y0..y{ny-1}``.  When ``nx`` is omitted it is inferred from the largest
    ``x`` index that occurs.
    """
    if names is None:
        if nx is None:
            idx = [int(tok) for tok in _scan_x_indices(text)]
            nx = max(idx) + 1 if idx else 1
        names = [f"x{i}" for i in range(nx)] + [f"y{i}" for i in range(ny)]
    else:
        names = list(names)
        if nx is None:
            nx = len(names) - ny
    index = {nm: i for i, nm in enumerate(names)}
    nvars = len(names)
    pos = 0
    n = len(text)

    def err(msg, at):
        return ParseError(msg, line=line, column=at + 1)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def number():
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise err("expected a number", start)
        return int(text[start:pos])

    def factor():
        nonlocal pos
        skip()
        if pos >= n:
            raise err("unexpected end of input", pos)
        ch = text[pos]
        if ch.isdigit():
            num = number()
            skip()
            if pos < n and text[pos] == "/":
                pos += 1
                skip()
                den = number()
                if den == 0:
                    raise err("zero denominator", pos - 1)
                return Fraction(num, den), None
            return Fraction(num), None
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            name = text[start:pos]
            if name not in index:
                raise err(f"unknown variable {name!r}", start)
            skip()
            k = 1
            if pos < n and text[pos] == "^":
                pos += 1
                skip()
                k = number()
            elif text.startswith("**", pos):
                pos += 2
                skip()
                k = number()
            return None, (index[name], k)
        raise err(f"unexpected character {ch!r}", pos)

    def term():
        nonlocal pos
        coeff = Fraction(1)
        exps = [0] * nvars
        while True:
            c, v = factor()
            if c is not None:
                coeff *= c
            else:
                exps[v[0]] += v[1]
            skip()
            if pos < n and text[pos] == "*" and not text.startswith("**", pos):
                pos += 1
                continue
            return tuple(exps), coeff

    terms: dict = {}
    skip()
    if pos >= n:
        raise err("empty polynomial", pos)
    sign = 1
    while True:
        skip()
        while pos < n and (text[pos] in _MINUS or text[pos] == "+"):
            if text[pos] in _MINUS:
                sign = -sign
            pos += 1
            skip()
        e, c = term()
        terms[e] = terms.get(e, 0) + sign * c
        skip()
        if pos >= n:
            break
        if text[pos] in _MINUS:
            sign = 1
            continue
        if text[pos] == "+":
            sign = 1
            pos += 1
            continue
        raise err(f"unexpected character {text[pos]!r}", pos)
    return MultiPoly(terms, nx, nvars - nx)


def _scan_x_indices(text: str):
    i, n = 0, len(text)
    while i < n:
        if text[i] == "x" and (i == 0 or not text[i - 1].isalnum()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j > i + 1:
                yield text[i + 1:j]
            i = j
        else:
            i += 1


def poly_to_json_str(p: MultiPoly) -> str:
    return json.dumps(p.to_json())


# ---------------------------------------------------------------------- ideals
class ReductionStrategy(enum.Enum):
    PRINCIPAL_DIVISION = "principal"
    BUCHBERGER = "buchberger"


class IdealSpec:
    """Homogeneous ideal ``(F_1, ..., F_s)`` with a normal-form procedure."""

    def __init__(self, generators: Iterable[MultiPoly], strategy: ReductionStrategy = None,
                 budget: int = None):
        gens = [g for g in generators]
        if not gens:
            raise ContractError("an ideal needs at least one generator")
        nx = gens[0].nx
        for g in gens:
            if g.ny or g.nx != nx:
                raise ContractError("ideal generators must be x-only with a common layout")
            if not g or not g.is_homogeneous():
                raise ContractError(f"generator {g} is not a nonzero homogeneous form")
        if strategy is None:
            strategy = (ReductionStrategy.PRINCIPAL_DIVISION if len(gens) == 1
                        else ReductionStrategy.BUCHBERGER)
        if strategy is ReductionStrategy.PRINCIPAL_DIVISION and len(gens) != 1:
            raise ContractError("principal division needs exactly one generator")
        self.generators = tuple(gens)
        self.strategy = strategy
        self.nx = nx
        self.budget = budget

    def __repr__(self):
        return f"IdealSpec({[str(g) for g in self.generators]}, {self.strategy.value})"

    @cached_property
    def pivot(self):
        """``(i, d)`` such that the generator contains ``x_i^d``; None if absent."""
        g = self.generators[0]
        d = g.x_degree()
        for i in reversed(range(self.nx)):
            e = [0] * self.nx
            e[i] = d
            if g.coefficient(e):
                return i, d
        return None

    @cached_property
    def groebner_basis(self) -> list:
        from mhessian.groebner import buchberger

        if self.strategy is ReductionStrategy.PRINCIPAL_DIVISION:
            g = self.generators[0]
            lead = max(g._terms, key=grevlex_key)
            return [g.scalar_mul(Fraction(1) / g._terms[lead])]
        basis = buchberger([g._terms for g in self.generators], self.nx, budget=self.budget)
        return [MultiPoly._raw(t, self.nx, 0) for t in basis]

    def divide(self, p: MultiPoly):
        """Principal division with cofactor: returns ``(q, r)`` with ``p = q*F + r``."""
        if self.strategy is not ReductionStrategy.PRINCIPAL_DIVISION:
            raise ReductionError("cofactor division is only tracked for principal ideals")
        F = self.generators[0]
        if p.nx != self.nx or p.ny:
            raise LayoutError("polynomial does not live in the ideal's ring")
        piv = self.pivot
        if piv is None:
            q, r = _divide_by_one(p._terms, F._terms)
            return MultiPoly._raw(q, self.nx, 0), MultiPoly._raw(r, self.nx, 0)
        i, d = piv
        e = [0] * self.nx
        e[i] = d
        lc = F._terms[tuple(e)]
        tail = {k: -Fraction(c) / lc for k, c in F._terms.items() if k[i] < d}
        cur = dict(p._terms)
        quot: dict = {}
        while True:
            top = max((k[i] for k in cur), default=-1)
            if top < d:
                break
            layer = [(k, c) for k, c in cur.items() if k[i] == top]
            for k, c in layer:
                del cur[k]
                sh = list(k)
                sh[i] -= d
                sh = tuple(sh)
                quot[sh] = quot.get(sh, 0) + Fraction(c) / lc
                for t, tc in tail.items():
                    m = tuple(a + b for a, b in zip(sh, t))
                    v = cur.get(m, 0) + c * tc
                    if v:
                        cur[m] = v
                    else:
                        cur.pop(m, None)
        q = {k: _norm(v) for k, v in quot.items() if v}
        r = {k: _norm(v) for k, v in cur.items() if v}
        return MultiPoly._raw(q, self.nx, 0), MultiPoly._raw(r, self.nx, 0)

    def reduce(self, p: MultiPoly) -> MultiPoly:
        return reduce_mod_ideal(p, self)

    def contains(self, p: MultiPoly) -> bool:
        return not reduce_mod_ideal(p, self)


def _divide_by_one(p: dict, g: dict):
    """Division by a single polynomial in grevlex (it is its own Groebner basis)."""
    lead = max(g, key=grevlex_key)
    lc = g[lead]
    cur = dict(p)
    heap = [(_heap_key(e), e) for e in cur]
    heapq.heapify(heap)
    quot: dict = {}
    rem: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = cur.pop(e, None)
        if not c:
            continue
        if all(a >= b for a, b in zip(e, lead)):
            sh = tuple(a - b for a, b in zip(e, lead))
            f = Fraction(c) / lc
            quot[sh] = quot.get(sh, 0) + f
            for t, tc in g.items():
                if t == lead:
                    continue
                m = tuple(a + b for a, b in zip(sh, t))
                if m not in cur:
                    heapq.heappush(heap, (_heap_key(m), m))
                    cur[m] = -f * tc
                else:
                    v = cur[m] - f * tc
                    cur[m] = v
        else:
            rem[e] = c
    return ({k: _norm(v) for k, v in quot.items() if v},
            {k: _norm(v) for k, v in rem.items() if v})


def reduce_mod_ideal(p: MultiPoly, ideal: IdealSpec) -> MultiPoly:
    """Normal form of ``p`` modulo ``ideal``; zero iff ``p`` lies in the ideal."""
    if p.ny:
        raise ContractError("reduce_mod_ideal expects an x-only polynomial")
    if p.nx != ideal.nx:
        raise LayoutError("polynomial does not live in the ideal's ring")
    if not p.is_homogeneous():
        raise ContractError("reduce_mod_ideal expects a homogeneous polynomial")
    if not p:
        return p
    if ideal.strategy is ReductionStrategy.PRINCIPAL_DIVISION:
        return ideal.divide(p)[1]
    from mhessian.groebner import normal_form

    basis = [g._terms for g in ideal.groebner_basis]
    return MultiPoly._raw(normal_form(p._terms, basis), p.nx, 0)


def evaluate(p: MultiPoly, point):
    return p.evaluate(point)


def evaluate_mod_p(p: MultiPoly, point, prime: int) -> int:
    return p.evaluate_mod_p(point, prime)


def is_homogeneous(p: MultiPoly, degree: int) -> bool:
    return p.is_homogeneous(degree)


def partial_derivative(p: MultiPoly, var_index: int) -> MultiPoly:
    return p.partial(var_index)


def taylor_coefficient(p: MultiPoly, alpha) -> MultiPoly:
    return p.taylor_coefficient(alpha)
