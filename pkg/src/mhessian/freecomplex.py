"""Complexes of graded free modules with polynomial-matrix differentials.

Conventions used throughout:

* A complex stores its terms in increasing homological degree starting at
  ``low``; ``d_k`` maps the degree-``k`` term to degree ``k - 1``.
* A generator with twist ``s`` spans a copy of ``A(s)``.  A matrix entry from
  a column of twist ``c`` to a row of twist ``t`` is a form of degree
  ``t - c`` (or zero).
* The mapping cone of ``f: A -> B`` has ``cone_k = A_{k-1} + B_k`` and
  differential ``(a, b) -> (-d a, d b + f a)``; shifting by ``s`` negates the
  differential ``s`` times.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from mhessian.errors import ContractError, DomainError, LayoutError
from mhessian.jets import EulerParams, euler_dual_map, JetElement
from mhessian.polyring import (
    IdealSpec,
    MultiPoly,
    binomial,
    monomials_of_degree,
    monomials_up_to,
    reduce_mod_ideal,
)


class GradedFreeModule:
    """Free module with labelled generators, each carrying a twist."""

    __slots__ = ("labels", "twists", "_index")

    def __init__(self, generators=()):
        gens = list(generators)
        self.labels = tuple(g[0] for g in gens)
        self.twists = tuple(int(g[1]) for g in gens)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ContractError("generator labels must be unique")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def __contains__(self, label):
        return label in self._index

    def generators(self) -> list:
        return list(zip(self.labels, self.twists))

    def tagged(self, tag) -> "GradedFreeModule":
        return GradedFreeModule(((tag, lab), t) for lab, t in self.generators())

    @staticmethod
    def direct_sum(parts) -> "GradedFreeModule":
        """``parts`` is a list of ``(tag, module)``; labels become ``(tag, label)``."""
        gens = []
        for tag, mod in parts:
            gens.extend(((tag, lab), t) for lab, t in mod.generators())
        return GradedFreeModule(gens)

    def __eq__(self, other):
        return (isinstance(other, GradedFreeModule) and self.labels == other.labels
                and self.twists == other.twists)

    def __repr__(self):
        return f"GradedFreeModule(rank={self.rank})"

    def to_json(self) -> list:
        return [{"label": _label_json(lab), "twist": t} for lab, t in self.generators()]


def _label_json(lab):
    if isinstance(lab, tuple):
        return [_label_json(x) for x in lab]
    return lab


EMPTY = GradedFreeModule()


class PolyMatrix:
    """Sparse matrix of x-only forms from ``cols`` to ``rows``."""

    __slots__ = ("rows", "cols", "entries", "nx", "_by_col")

    def __init__(self, rows: GradedFreeModule, cols: GradedFreeModule, entries: dict,
                 nx: int):
        self.rows = rows
        self.cols = cols
        self.nx = nx
        clean = {}
        for (i, j), v in entries.items():
            if not (0 <= i < rows.rank and 0 <= j < cols.rank):
                raise LayoutError(f"entry ({i}, {j}) outside a {rows.rank}x{cols.rank} matrix")
            if v:
                if v.nx != nx or v.ny:
                    raise LayoutError("matrix entries must be x-only forms of the ring")
                clean[(i, j)] = v
        self.entries = clean
        self._by_col = None

    @classmethod
    def zero(cls, rows, cols, nx) -> "PolyMatrix":
        return cls(rows, cols, {}, nx)

    @property
    def shape(self):
        return (self.rows.rank, self.cols.rank)

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries.get((i, j)) or MultiPoly.zero(self.nx)

    def by_column(self) -> dict:
        if self._by_col is None:
            cols: dict = {}
            for (i, j), v in sorted(self.entries.items()):
                cols.setdefault(j, []).append((i, v))
            self._by_col = cols
        return self._by_col

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols.rank != other.rows.rank:
            raise LayoutError(f"cannot compose {self.shape} with {other.shape}")
        mine = self.by_column()
        out: dict = {}
        for (k, j), v in sorted(other.entries.items()):
            for i, u in mine.get(k, ()):
                key = (i, j)
                p = u * v
                out[key] = out[key] + p if key in out else p
        return PolyMatrix(self.rows, other.cols, out, self.nx)

    def __neg__(self):
        return PolyMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()}, self.nx)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise LayoutError("shape mismatch in matrix sum")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return PolyMatrix(self.rows, self.cols, out, self.nx)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols,
                          {k: v.scalar_mul(c) for k, v in self.entries.items()}, self.nx)

    def is_zero(self) -> bool:
        return not self.entries

    def reduce(self, ideal: Optional[IdealSpec]) -> "PolyMatrix":
        if ideal is None:
            return self
        return PolyMatrix(self.rows, self.cols,
                          {k: reduce_mod_ideal(v, ideal) for k, v in self.entries.items()},
                          self.nx)

    def submatrix(self, rows: list, cols: list) -> list:
        """Dense ``len(rows) x len(cols)`` list of entries (zeros as MultiPoly)."""
        zero = MultiPoly.zero(self.nx)
        return [[self.entries.get((i, j), zero) for j in cols] for i in rows]

    def entry_degree(self, i: int, j: int) -> int:
        return self.rows.twists[i] - self.cols.twists[j]

    def homogeneity_violations(self) -> list:
        bad = []
        for (i, j), v in sorted(self.entries.items()):
            want = self.entry_degree(i, j)
            if want < 0 or not v.is_homogeneous(want):
                bad.append((i, j))
        return bad

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self.entries.values())

    def evaluate(self, point) -> list:
        """Dense matrix of exact values at ``point``."""
        m = [[0] * self.cols.rank for _ in range(self.rows.rank)]
        for (i, j), v in self.entries.items():
            m[i][j] = v.evaluate(point)
        return m

    def evaluate_mod_p(self, point, prime: int) -> list:
        m = [[0] * self.cols.rank for _ in range(self.rows.rank)]
        for (i, j), v in self.entries.items():
            m[i][j] = v.evaluate_mod_p(point, prime)
        return m

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "entries": [{"row": i, "col": j, "value": str(v)}
                        for (i, j), v in sorted(self.entries.items())],
        }

    def __repr__(self):
        return f"PolyMatrix({self.rows.rank}x{self.cols.rank}, nnz={len(self.entries)})"


def assemble(row_parts: list, col_parts: list, blocks: dict, nx: int) -> PolyMatrix:
    """Block matrix between direct sums.

    ``row_parts``/``col_parts`` are ``(tag, module)`` lists; ``blocks`` maps
    ``(row_tag, col_tag)`` to a :class:`PolyMatrix` between the parts.
    """
    rows = GradedFreeModule.direct_sum(row_parts)
    cols = GradedFreeModule.direct_sum(col_parts)
    roff, off = {}, 0
    for tag, mod in row_parts:
        roff[tag] = off
        off += mod.rank
    coff, off = {}, 0
    for tag, mod in col_parts:
        coff[tag] = off
        off += mod.rank
    out = {}
    for (rt, ct), blk in blocks.items():
        if blk is None:
            continue
        ro, co = roff[rt], coff[ct]
        for (i, j), v in blk.entries.items():
            out[(ro + i, co + j)] = v
    return PolyMatrix(rows, cols, out, nx)


class GradedFreeComplex:
    """Terms ``terms[0..k]`` in degrees ``low..low+k`` with ``d_i: term_i -> term_{i-1}``."""

    def __init__(self, terms: list, differentials: list, nx: int, low: int = 0, name: str = ""):
        terms = list(terms)
        differentials = list(differentials)
        if len(differentials) != max(len(terms) - 1, 0):
            raise LayoutError("need one differential between each pair of adjacent terms")
        for i, d in enumerate(differentials, start=1):
            if d.cols != terms[i] or d.rows != terms[i - 1]:
                raise LayoutError(f"differential {i} does not match its terms")
        self.terms = terms
        self.differentials = differentials
        self.nx = nx
        self.low = low
        self.name = name

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def high(self) -> int:
        return self.low + len(self.terms) - 1

    def ranks(self) -> list:
        return [t.rank for t in self.terms]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * r for i, r in enumerate(self.ranks()))

    def differential(self, i: int) -> PolyMatrix:
        """``d_i`` in relative indexing (``1 <= i < length``)."""
        return self.differentials[i - 1]

    def term_at(self, k: int) -> GradedFreeModule:
        """Term in absolute degree ``k`` (empty outside the stored range)."""
        i = k - self.low
        return self.terms[i] if 0 <= i < len(self.terms) else EMPTY

    def d_at(self, k: int) -> PolyMatrix:
        """Differential leaving absolute degree ``k``."""
        i = k - self.low
        if 1 <= i < len(self.terms):
            return self.differentials[i - 1]
        return PolyMatrix.zero(self.term_at(k - 1), self.term_at(k), self.nx)

    def __repr__(self):
        return f"GradedFreeComplex({self.name or 'unnamed'}, low={self.low}, ranks={self.ranks()})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "low": self.low,
            "terms": [t.to_json() for t in self.terms],
            "differentials": [d.to_json() for d in self.differentials],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json())


class ComplexMap:
    """Degreewise maps ``blocks[k]: source_k -> target_k``."""

    def __init__(self, source: GradedFreeComplex, target: GradedFreeComplex, blocks: dict):
        self.source = source
        self.target = target
        lo = min(source.low, target.low)
        hi = max(source.high, target.high)
        full = {}
        for k in range(lo, hi + 1):
            b = blocks.get(k)
            if b is None:
                b = PolyMatrix.zero(target.term_at(k), source.term_at(k), source.nx)
            elif b.rows != target.term_at(k) or b.cols != source.term_at(k):
                raise LayoutError(f"block in degree {k} does not match the complexes")
            full[k] = b
        self.blocks = full

    def block(self, k: int) -> PolyMatrix:
        b = self.blocks.get(k)
        if b is None:
            return PolyMatrix.zero(self.target.term_at(k), self.source.term_at(k), self.source.nx)
        return b

    def degrees(self) -> list:
        return sorted(self.blocks)

    def commutation_defects(self, k: int) -> PolyMatrix:
        """``d_target f_k - f_{k-1} d_source`` leaving degree ``k``."""
        return self.target.d_at(k) @ self.block(k) - self.block(k - 1) @ self.source.d_at(k)


# ---------------------------------------------------------------------- helpers
def _curve_data(curve):
    forms = list(curve.forms)
    return forms, list(curve.degrees), curve.r + 1


def _d_J(degrees, J) -> int:
    return sum(degrees[i] for i in J)


def jet_module(nx: int, n: int, twist: int, tag=None) -> GradedFreeModule:
    """Basis ``y^alpha`` (``|alpha| <= n``) of the jet module of order ``n``."""
    if n < 0:
        return EMPTY
    return GradedFreeModule(((alpha if tag is None else (tag, alpha)), twist - sum(alpha))
                            for alpha in monomials_up_to(n, nx))


def sections_module(nx: int, m: int, tag=None) -> GradedFreeModule:
    """Basis ``x^beta`` (``|beta| = m``) of the degree-``m`` forms, all twists 0."""
    return GradedFreeModule(((beta if tag is None else (tag, beta)), 0)
                            for beta in monomials_of_degree(m, nx))


def multiplication_matrix(F: MultiPoly, rows: GradedFreeModule, cols: GradedFreeModule,
                          sign: int = 1) -> PolyMatrix:
    """Constant matrix of ``x^beta -> sign * F * x^beta`` between monomial bases."""
    out = {}
    for j, beta in enumerate(cols.labels):
        for e, c in F.terms.items():
            lab = tuple(x + y for x, y in zip(beta, e))
            out[(rows.index(lab), j)] = MultiPoly.constant(sign * c, F.nx)
    return PolyMatrix(rows, cols, out, F.nx)


def delta_matrix(F: MultiPoly, rows: GradedFreeModule, cols: GradedFreeModule,
                 bound: int, sign: int = 1) -> PolyMatrix:
    """Matrix of ``w -> sign * DeltaF * w`` on jets, truncated at y-degree ``bound``."""
    out = {}
    for j, alpha in enumerate(cols.labels):
        for beta, t in _delta_image(F, alpha, bound):
            out[(rows.index(beta), j)] = t if sign == 1 else -t
    return PolyMatrix(rows, cols, out, F.nx)


def euler_matrix(rows: GradedFreeModule, cols: GradedFreeModule, nx: int,
                 params: EulerParams, sign: int = 1) -> PolyMatrix:
    """Matrix of the Euler dual map from jets of order ``n`` to order ``n - 1``."""
    out = {}
    for j, alpha in enumerate(cols.labels):
        w = JetElement(MultiPoly._raw({(0,) * nx + tuple(alpha): 1}, nx, nx), params.n)
        img = euler_dual_map(w, params).poly
        for beta, c in img.y_coefficients().items():
            out[(rows.index(beta), j)] = c if sign == 1 else -c
    return PolyMatrix(rows, cols, out, nx)


def jet_eval_matrix(rows: GradedFreeModule, cols: GradedFreeModule, nx: int,
                    sign: int = 1) -> PolyMatrix:
    """Matrix sending ``x^beta`` to its jet ``sum_alpha C(beta, alpha) x^(beta-alpha) y^alpha``."""
    out = {}
    for j, beta in enumerate(cols.labels):
        mono = MultiPoly._raw({tuple(beta): 1}, nx, 0)
        for i, alpha in enumerate(rows.labels):
            if all(a <= b for a, b in zip(alpha, beta)):
                t = mono.taylor_coefficient(alpha)
                out[(i, j)] = t if sign == 1 else -t
    return PolyMatrix(rows, cols, out, nx)


# ---------------------------------------------------------------------- builders
def _koszul_term(nx, s, degrees, m, n, j) -> GradedFreeModule:
    gens = []
    for J in combinations(range(s), j):
        twist = m - _d_J(degrees, J)
        if n - j >= 0:
            for alpha in monomials_up_to(n - j, nx):
                gens.append(((J, alpha), twist - sum(alpha)))
    return GradedFreeModule(gens)


def koszul_jet_complex(curve, m: int, n: int) -> GradedFreeComplex:
    """Koszul complex of the ``Delta F_i`` on jet modules, twisted by ``m``.

    The degree-``j`` term has basis ``(J, y^alpha)`` with ``|J| = j`` and
    ``|alpha| <= n - j``.
    """
    if n < 0:
        raise DomainError("jet order must be non-negative")
    forms, degrees, nx = _curve_data(curve)
    s = len(forms)
    terms = [_koszul_term(nx, s, degrees, m, n, j) for j in range(s + 1)]
    diffs = []
    for j in range(1, s + 1):
        src, tgt = terms[j], terms[j - 1]
        bound = n - j + 1
        cache = {}
        out = {}
        for col, (J, alpha) in enumerate(src.labels):
            for k, idx in enumerate(J):
                sign = -1 if k % 2 else 1
                Jr = J[:k] + J[k + 1:]
                key = (idx, alpha)
                img = cache.get(key)
                if img is None:
                    img = _delta_image(forms[idx], alpha, bound)
                    cache[key] = img
                for beta, t in img:
                    out[(tgt.index((Jr, beta)), col)] = t if sign == 1 else -t
        diffs.append(PolyMatrix(tgt, src, out, nx))
    return GradedFreeComplex(terms, diffs, nx, 0, name=f"koszul_jet(m={m}, n={n})")


def _delta_image(F: MultiPoly, alpha, bound: int) -> list:
    """Pairs ``(beta, c_beta(x))`` with ``DeltaF * y^alpha = sum c_beta y^beta``."""
    nx = F.nx
    out = []
    room = bound - sum(alpha)
    for g in range(1, room + 1):
        for gamma in monomials_of_degree(g, nx):
            t = F.taylor_coefficient(gamma)
            if t:
                out.append((tuple(a + b for a, b in zip(alpha, gamma)), t))
    return out


def _sections_term(nx, s, degrees, m, j) -> GradedFreeModule:
    gens = []
    for J in combinations(range(s), j):
        for beta in monomials_of_degree(m - _d_J(degrees, J), nx):
            gens.append(((J, beta), 0))
    return GradedFreeModule(gens)


def global_sections_row(curve, m: int) -> GradedFreeComplex:
    """Koszul complex of the ``F_i`` on the spaces of forms of degree ``m - d_J``."""
    forms, degrees, nx = _curve_data(curve)
    s = len(forms)
    terms = [_sections_term(nx, s, degrees, m, j) for j in range(s + 1)]
    diffs = []
    for j in range(1, s + 1):
        src, tgt = terms[j], terms[j - 1]
        out = {}
        for col, (J, beta) in enumerate(src.labels):
            for k, idx in enumerate(J):
                sign = -1 if k % 2 else 1
                Jr = J[:k] + J[k + 1:]
                for e, c in forms[idx].terms.items():
                    lab = (Jr, tuple(a + b for a, b in zip(beta, e)))
                    out[(tgt.index(lab), col)] = MultiPoly.constant(sign * c, nx)
        diffs.append(PolyMatrix(tgt, src, out, nx))
    return GradedFreeComplex(terms, diffs, nx, 0, name=f"global_sections(m={m})")


def tau_bar(curve, m: int, n: int) -> ComplexMap:
    """Jet evaluation from the global-sections row into the Koszul jet complex."""
    forms, degrees, nx = _curve_data(curve)
    G = global_sections_row(curve, m)
    K = koszul_jet_complex(curve, m, n)
    blocks = {}
    for j in range(len(forms) + 1):
        src, tgt = G.terms[j], K.terms[j]
        out = {}
        for col, (J, beta) in enumerate(src.labels):
            mono = MultiPoly._raw({beta: 1}, nx, 0)
            if n - j < 0:
                continue
            for alpha in monomials_up_to(n - j, nx):
                if all(a <= b for a, b in zip(alpha, beta)):
                    out[(tgt.index((J, alpha)), col)] = mono.taylor_coefficient(alpha)
        blocks[j] = PolyMatrix(tgt, src, out, nx)
    return ComplexMap(G, K, blocks)


def euler_epsilon_complex_map(curve, m: int, n: int) -> ComplexMap:
    """Blockwise Euler dual maps from the order-``n`` to the order-``n-1`` jet complex."""
    forms, degrees, nx = _curve_data(curve)
    K = koszul_jet_complex(curve, m, n)
    Kp = koszul_jet_complex(curve, m, n - 1) if n >= 1 else _empty_like(K, nx)
    blocks = {}
    for j in range(len(forms) + 1):
        src, tgt = K.terms[j], Kp.terms[j]
        out = {}
        rindex = {lab: i for i, lab in enumerate(tgt.labels)}
        for col, (J, alpha) in enumerate(src.labels):
            params = EulerParams(m - _d_J(degrees, J), n - j)
            w = JetElement(MultiPoly._raw({(0,) * nx + alpha: 1}, nx, nx), n - j)
            img = euler_dual_map(w, params).poly
            for beta, c in img.y_coefficients().items():
                out[(rindex[(J, beta)], col)] = c
        blocks[j] = PolyMatrix(tgt, src, out, nx)
    return ComplexMap(K, Kp, blocks)


def _empty_like(K: GradedFreeComplex, nx: int) -> GradedFreeComplex:
    terms = [EMPTY for _ in K.terms]
    diffs = [PolyMatrix.zero(EMPTY, EMPTY, nx) for _ in K.differentials]
    return GradedFreeComplex(terms, diffs, nx, K.low)


def cone(fmap: ComplexMap) -> GradedFreeComplex:
    """Mapping cone: ``cone_k = src_{k-1} + tgt_k``, ``d(a, b) = (-d a, d b + f a)``."""
    A, B = fmap.source, fmap.target
    nx = A.nx
    lo = min(A.low + 1, B.low)
    hi = max(A.high + 1, B.high)
    terms = []
    for k in range(lo, hi + 1):
        terms.append(GradedFreeModule.direct_sum([("src", A.term_at(k - 1)), ("tgt", B.term_at(k))]))
    diffs = []
    for k in range(lo + 1, hi + 1):
        rows = [("src", A.term_at(k - 2)), ("tgt", B.term_at(k - 1))]
        cols = [("src", A.term_at(k - 1)), ("tgt", B.term_at(k))]
        blocks = {
            ("src", "src"): -A.d_at(k - 1),
            ("tgt", "src"): fmap.block(k - 1),
            ("tgt", "tgt"): B.d_at(k),
        }
        diffs.append(assemble(rows, cols, blocks, nx))
    return GradedFreeComplex(terms, diffs, nx, lo, name=f"cone({A.name} -> {B.name})")


def shift(C: GradedFreeComplex, s: int = 1) -> GradedFreeComplex:
    """``C[s]_k = C_{k+s}`` with the differential multiplied by ``(-1)^s``."""
    diffs = C.differentials if s % 2 == 0 else [-d for d in C.differentials]
    return GradedFreeComplex(C.terms, diffs, C.nx, C.low - s, name=f"{C.name}[{s}]")


def euler_cone(curve, m: int, n: int) -> GradedFreeComplex:
    """The cone of the Euler map shifted by one, so the order-``n`` jets sit in their own degrees."""
    return shift(cone(euler_epsilon_complex_map(curve, m, n)), 1)


def tau_tilde(curve, m: int, n: int) -> ComplexMap:
    """Jet evaluation into the shifted Euler cone (landing in the order-``n`` summand)."""
    tb = tau_bar(curve, m, n)
    C = euler_cone(curve, m, n)
    G = tb.source
    nx = G.nx
    blocks = {}
    for k in range(G.low, G.high + 1):
        tgt = C.term_at(k)
        src = G.term_at(k)
        b = tb.block(k)
        out = {}
        for (i, j), v in b.entries.items():
            out[(tgt.index(("src", b.rows.labels[i])), j)] = v
        blocks[k] = PolyMatrix(tgt, src, out, nx)
    return ComplexMap(G, C, blocks)


def plane_jet_order(d: int, m: int) -> int:
    """``n`` with ``n + 1`` the dimension of degree-``m`` forms modulo ``F``."""
    return binomial(m + 2, 2) - binomial(m - d + 2, 2) - 1


def total_complex_plane_curve(F: MultiPoly, m: int) -> GradedFreeComplex:
    """Explicit four-term complex for a plane curve whose determinant is the m-Hessian.

    Terms (relative degree 0 to 3)::

        P^{n-1}(m) <- P^n(m) + P^{n-2}(m-d) <- H0(O(m)) + P^{n-1}(m-d) <- H0(O(m-d))
    """
    if F.ny or F.nx != 3:
        raise ContractError("expected a ternary form")
    if not F.is_homogeneous() or not F:
        raise ContractError("expected a nonzero homogeneous form")
    d = F.x_degree()
    if d < 3:
        raise DomainError(f"plane curve degree must be at least 3, got {d}")
    nx = 3
    n = plane_jet_order(d, m)
    if n < 0:
        raise DomainError(f"no sections in degree m={m}")
    H_md = sections_module(nx, m - d)
    H_m = sections_module(nx, m)
    P_nm1_md = jet_module(nx, n - 1, m - d)
    P_n_m = jet_module(nx, n, m)
    P_nm2_md = jet_module(nx, n - 2, m - d)
    P_nm1_m = jet_module(nx, n - 1, m)

    # delta2: a -> (F a, -jet_{n-1}(a))
    d2 = assemble(
        [("b", H_m), ("c", P_nm1_md)],
        [("a", H_md)],
        {
            ("b", "a"): multiplication_matrix(F, H_m, H_md),
            ("c", "a"): jet_eval_matrix(P_nm1_md, H_md, nx, sign=-1),
        },
        nx,
    )
    # delta1: (b, c) -> (c DeltaF + jet_n(b), -eps(c))
    d1 = assemble(
        [("d", P_n_m), ("e", P_nm2_md)],
        [("b", H_m), ("c", P_nm1_md)],
        {
            ("d", "b"): jet_eval_matrix(P_n_m, H_m, nx),
            ("d", "c"): delta_matrix(F, P_n_m, P_nm1_md, n),
            ("e", "c"): euler_matrix(P_nm2_md, P_nm1_md, nx,
                                     EulerParams(m - d, n - 1), sign=-1)
            if n - 1 >= 1 else None,
        },
        nx,
    )
    # delta0: (d, e) -> e DeltaF + eps(d)
    d0 = assemble(
        [("f", P_nm1_m)],
        [("d", P_n_m), ("e", P_nm2_md)],
        {
            ("f", "d"): euler_matrix(P_nm1_m, P_n_m, nx, EulerParams(m, n))
            if n >= 1 else None,
            ("f", "e"): delta_matrix(F, P_nm1_m, P_nm2_md, n - 1),
        },
        nx,
    )
    terms = [d0.rows, d0.cols, d1.cols, d2.cols]
    return GradedFreeComplex(terms, [d0, d1, d2], nx, 0, name=f"total_plane(m={m})")


# ---------------------------------------------------------------------- checks
@dataclass
class ComplexReport:
    ok: bool
    homogeneous: bool
    squares_vanish: bool
    violation: Optional[dict] = None
    checked_entries: int = 0
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_complex(complex_: GradedFreeComplex, ideal: Optional[IdealSpec] = None) -> ComplexReport:
    """Check the homogeneity law and ``d_{i-1} d_i = 0`` (exactly, or modulo ``ideal``)."""
    checked = 0
    for i, d in enumerate(complex_.differentials, start=1):
        bad = d.homogeneity_violations()
        checked += len(d.entries)
        if bad:
            r, c = bad[0]
            return ComplexReport(False, False, False, {
                "kind": "homogeneity", "differential": i, "row": r, "col": c,
                "row_label": d.rows.labels[r], "col_label": d.cols.labels[c],
                "entry": str(d.entry(r, c)), "expected_degree": d.entry_degree(r, c),
            }, checked)
    for i in range(2, complex_.length):
        prod = complex_.differential(i - 1) @ complex_.differential(i)
        for (r, c), v in sorted(prod.entries.items()):
            checked += 1
            w = reduce_mod_ideal(v, ideal) if ideal is not None else v
            if w:
                return ComplexReport(False, True, False, {
                    "kind": "square", "differential": i, "row": r, "col": c,
                    "row_label": prod.rows.labels[r], "col_label": prod.cols.labels[c],
                    "entry": str(w),
                }, checked)
    return ComplexReport(True, True, True, None, checked)


def check_map(fmap: ComplexMap, ideal: Optional[IdealSpec] = None) -> ComplexReport:
    """Homogeneity of the blocks and square commutation (exactly or modulo ``ideal``)."""
    checked = 0
    for k in fmap.degrees():
        b = fmap.block(k)
        bad = b.homogeneity_violations()
        checked += len(b.entries)
        if bad:
            r, c = bad[0]
            return ComplexReport(False, False, False, {
                "kind": "homogeneity", "degree": k, "row": r, "col": c,
                "entry": str(b.entry(r, c)),
            }, checked)
    for k in fmap.degrees():
        defect = fmap.commutation_defects(k)
        for (r, c), v in sorted(defect.entries.items()):
            checked += 1
            w = reduce_mod_ideal(v, ideal) if ideal is not None else v
            if w:
                return ComplexReport(False, True, False, {
                    "kind": "commutation", "degree": k, "row": r, "col": c,
                    "row_label": defect.rows.labels[r], "col_label": defect.cols.labels[c],
                    "entry": str(w),
                }, checked)
    return ComplexReport(True, True, True, None, checked)
