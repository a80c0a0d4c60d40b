"""Determinants of generically exact complexes and the m-Hessian built from them.

The determinant of a complex ``term_k -> ... -> term_0`` is computed from an
interlocking chain of square minors: ``S_i`` columns of ``d_i`` and rows
``T_{i-1}``, the complement of ``S_{i-1}`` (with ``S_0`` empty).  The value is
``prod_i det(d_i[T_{i-1}, S_i])^((-1)^(i+1))``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from mhessian import kernels
from mhessian.errors import (
    ContractError,
    DegenerateComplexError,
    DomainError,
    IndeterminateError,
    ModularError,
    NotGenericallyExactError,
    StaleChainError,
)
from mhessian.freecomplex import (
    GradedFreeComplex,
    cone,
    tau_tilde,
    total_complex_plane_curve,
)
from mhessian.linalg import det_poly, rank_profile_exact
from mhessian.modp import sample_curve_point
from mhessian.oracles import CurveSpec, degree_report
from mhessian.polyring import IdealSpec, MultiPoly, reduce_mod_ideal, parse_poly

DEFAULT_PRIME = (1 << 31) - 1


class OracleMode(enum.Enum):
    EXACT_REDUCTION = "exact-reduction"
    MODULAR_POINT_ON_CURVE = "modular-point"
    EXACT_GENERIC = "exact-generic"


@dataclass
class NonvanishingOracle:
    """Decides which minors count as nonzero when building a chain.

    ``MODULAR_POINT_ON_CURVE`` evaluates at a random point of the curve over
    GF(prime); ``EXACT_REDUCTION`` does the same and then confirms every chosen
    minor by exact reduction modulo the curve ideal; ``EXACT_GENERIC`` works
    over Q at a random integer point (or directly, for constant complexes).
    """

    mode: OracleMode = OracleMode.MODULAR_POINT_ON_CURVE
    prime: int = DEFAULT_PRIME
    seed: int = 0
    curve: Optional[CurveSpec] = None
    max_point_retries: int = 20
    max_backtracks: int = 100

    def __post_init__(self):
        if isinstance(self.mode, str):
            self.mode = OracleMode(self.mode)
        if self.mode is not OracleMode.EXACT_GENERIC and self.prime <= (1 << 30):
            raise DomainError("modular oracles need a prime above 2^30")

    def for_curve(self, curve: CurveSpec) -> "NonvanishingOracle":
        return NonvanishingOracle(self.mode, self.prime, self.seed, curve,
                                  self.max_point_retries, self.max_backtracks)

    def with_seed(self, seed: int) -> "NonvanishingOracle":
        return NonvanishingOracle(self.mode, self.prime, seed, self.curve,
                                  self.max_point_retries, self.max_backtracks)

    @property
    def modular(self) -> bool:
        return self.mode is not OracleMode.EXACT_GENERIC


@dataclass
class MinorChain:
    """Selected columns ``S_i`` and rows ``T_{i-1}`` for each differential ``d_i``."""

    expected_ranks: list
    columns: dict  # i -> list of column indices of d_i
    rows: dict  # i -> list of row indices of d_i
    point: Optional[tuple] = None
    backtracks: int = 0

    def to_json(self) -> dict:
        return {
            "expected_ranks": list(self.expected_ranks),
            "columns": {str(i): list(c) for i, c in sorted(self.columns.items())},
            "rows": {str(i): list(r) for i, r in sorted(self.rows.items())},
            "backtracks": self.backtracks,
        }


@dataclass
class RationalSection:
    numerator: MultiPoly
    denominator: MultiPoly
    ambient_degree: int
    chain: Optional[MinorChain] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.denominator:
            raise ContractError("denominator of a rational section must be nonzero")

    def reciprocal(self) -> "RationalSection":
        if not self.numerator:
            raise ContractError("cannot invert a zero section")
        return RationalSection(self.denominator, self.numerator, -self.ambient_degree, self.chain)

    def is_constant(self) -> bool:
        return self.numerator.is_constant() and self.denominator.is_constant()

    def value(self):
        """The scalar value of a constant section."""
        if not self.is_constant():
            raise ContractError("section is not constant")
        v = Fraction(self.numerator.constant_term()) / Fraction(self.denominator.constant_term())
        return v.numerator if v.denominator == 1 else v

    def to_json(self) -> dict:
        return {
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "ambient_degree": self.ambient_degree,
        }

    @classmethod
    def from_json(cls, data: dict, nx: int) -> "RationalSection":
        return cls(parse_poly(data["numerator"], nx), parse_poly(data["denominator"], nx),
                   data["ambient_degree"])


# ---------------------------------------------------------------------- ranks
def expected_ranks(complex_: GradedFreeComplex) -> list:
    """``[r_1, ..., r_k]`` with ``r_i = sum_{j >= i} (-1)^(j-i) rank_j``."""
    ranks = complex_.ranks()
    if complex_.euler_characteristic() != 0:
        raise NotGenericallyExactError(
            f"Euler characteristic {complex_.euler_characteristic()} is nonzero for ranks {ranks}"
        )
    k = len(ranks)
    out = []
    for i in range(1, k):
        r = sum((-1) ** (j - i) * ranks[j] for j in range(i, k))
        if r < 0:
            raise NotGenericallyExactError(f"negative expected rank {r} at position {i}")
        out.append(r)
    return out


# ---------------------------------------------------------------------- chains
class _Evaluator:
    """Numeric images of the differentials at one point (cached per point)."""

    def __init__(self, complex_: GradedFreeComplex, oracle: NonvanishingOracle,
                 rng: random.Random):
        self.complex = complex_
        self.oracle = oracle
        self.rng = rng
        self.point = None
        self._cache = {}
        self.constant = all(d.is_constant() for d in complex_.differentials)

    def new_point(self):
        self._cache = {}
        nx = self.complex.nx
        o = self.oracle
        if self.constant:
            self.point = (0,) * nx
        elif o.modular:
            if o.curve is None:
                raise ContractError("modular oracles need a curve to sample points from")
            self.point = sample_curve_point(o.curve.forms, nx, o.prime, self.rng)
        else:
            self.point = tuple(self.rng.randint(-1000, 1000) for _ in range(nx))
        return self.point

    def matrix(self, i: int) -> list:
        m = self._cache.get(i)
        if m is None:
            d = self.complex.differential(i)
            if self.oracle.modular and not self.constant:
                m = d.evaluate_mod_p(self.point, self.oracle.prime)
            elif self.constant:
                m = [[0] * d.cols.rank for _ in range(d.rows.rank)]
                for (r, c), v in d.entries.items():
                    m[r][c] = v.constant_term()
            else:
                m = d.evaluate(self.point)
            self._cache[i] = m
        return m

    def profile(self, i: int, rows: list, order: list) -> list:
        """Rank profile of ``d_i[rows, order]``; returns original column indices."""
        full = self.matrix(i)
        sub = [[full[r][c] for c in order] for r in rows]
        if self.oracle.modular and not self.constant:
            picked = kernels.rank_profile_mod_p(sub, len(order), self.oracle.prime)
        else:
            picked = rank_profile_exact(sub, len(order))
        return [order[k] for k in picked]


def select_minor_chain(complex_: GradedFreeComplex, oracle: NonvanishingOracle) -> MinorChain:
    """Greedy chain of nonsingular minors, resampling points and backtracking as needed."""
    ranks = expected_ranks(complex_)
    k = len(ranks)
    rng = random.Random(oracle.seed)
    ev = _Evaluator(complex_, oracle, rng)
    backtracks = 0
    for _attempt in range(oracle.max_point_retries):
        try:
            ev.new_point()
        except ModularError:
            continue
        perms = {}
        for i in range(1, k + 1):
            ncols = complex_.differential(i).cols.rank
            order = list(range(ncols))
            rng.shuffle(order)
            perms[i] = order
        columns, rows = {}, {}
        i = 1
        prev_cols: list = []
        ok = True
        while i <= k:
            d = complex_.differential(i)
            T = [r for r in range(d.rows.rank) if r not in set(prev_cols)]
            if len(T) != ranks[i - 1]:
                raise NotGenericallyExactError("row count does not match the expected rank")
            picked = ev.profile(i, T, perms[i]) if ranks[i - 1] else []
            if len(picked) < ranks[i - 1]:
                # try another column order at the previous level before giving up on the point
                if i > 1 and backtracks < oracle.max_backtracks:
                    backtracks += 1
                    i -= 1
                    order = list(perms[i])
                    rng.shuffle(order)
                    perms[i] = order
                    prev_cols = columns.get(i - 1, [])
                    continue
                ok = False
                break
            S = sorted(picked[: ranks[i - 1]])
            columns[i] = S
            rows[i] = T
            prev_cols = S
            i += 1
        if ok:
            return MinorChain(ranks, columns, rows, ev.point, backtracks)
        if ev.constant:
            break
    raise DegenerateComplexError("no admissible chain of minors; the complex is not generically exact")


# ---------------------------------------------------------------------- determinants
def minor_degree(complex_: GradedFreeComplex, i: int, rows: list, cols: list) -> int:
    d = complex_.differential(i)
    return sum(d.rows.twists[r] for r in rows) - sum(d.cols.twists[c] for c in cols)


def determinant_of_complex(complex_: GradedFreeComplex, chain: MinorChain,
                           method: str = "auto") -> RationalSection:
    """Alternating product of the chain's minors, split into numerator and denominator."""
    nx = complex_.nx
    num = MultiPoly.one(nx)
    den = MultiPoly.one(nx)
    degree = 0
    for i in sorted(chain.columns):
        cols, rows = chain.columns[i], chain.rows[i]
        if len(cols) != len(rows):
            raise ContractError(f"minor {i} is not square")
        if not cols:
            continue
        d = complex_.differential(i)
        deg = minor_degree(complex_, i, rows, cols)
        det = det_poly(d.submatrix(rows, cols), degree=deg, method=method, nx=nx)
        if not det:
            raise StaleChainError(f"minor of differential {i} is identically zero")
        if i % 2 == 1:
            num = num * det
            degree += deg
        else:
            den = den * det
            degree -= deg
    return RationalSection(num, den, degree, chain)


def _verify_exact(section: RationalSection, ideal: IdealSpec):
    for name, p in (("numerator", section.numerator), ("denominator", section.denominator)):
        if not reduce_mod_ideal(p, ideal):
            raise StaleChainError(f"the {name} lies in the curve ideal")


def hessian_complex(curve: CurveSpec, m: int, plane_explicit: bool = True) -> GradedFreeComplex:
    """The complex whose determinant is the rational m-Hessian."""
    if curve.r == 2 and plane_explicit:
        return total_complex_plane_curve(curve.forms[0], m)
    n = degree_report(curve, m).rank_n_plus_1 - 1
    if n < 0:
        raise DomainError(f"no sections of degree m={m}")
    return cone(tau_tilde(curve, m, n))


def hessian_div(curve: CurveSpec, m: int, oracle: NonvanishingOracle = None,
                plane_explicit: bool = True, method: str = "auto",
                max_reselect: int = 5) -> RationalSection:
    """Rational m-Hessian ``A/B`` of a smooth curve, with ``deg A - deg B = a``.

    The determinant of the complex carries the Wronskian in the denominator
    under the chain orientation used here, so the reciprocal is returned.
    """
    oracle = (oracle or NonvanishingOracle()).for_curve(curve)
    if curve.r == 2 and curve.degrees[0] < 3:
        raise DomainError("plane curves need degree at least 3")
    C = hessian_complex(curve, m, plane_explicit)
    ideal = curve.ideal()
    last = None
    for attempt in range(max_reselect):
        orc = oracle.with_seed(oracle.seed + attempt * 7919) if attempt else oracle
        chain = select_minor_chain(C, orc)
        try:
            section = determinant_of_complex(C, chain, method).reciprocal()
            if oracle.mode is not OracleMode.EXACT_GENERIC:
                _verify_exact(section, ideal)
            return section
        except StaleChainError as exc:
            last = exc
    raise last


# ---------------------------------------------------------------------- comparisons
def compare_on_curve(s1: RationalSection, s2: RationalSection, ideal: IdealSpec):
    """``(True, c)`` if ``A1 B2 = c A2 B1`` modulo ``ideal`` with ``c != 0``; else ``(False, None)``."""
    if s1.ambient_degree != s2.ambient_degree:
        raise ContractError(
            f"ambient degrees differ: {s1.ambient_degree} vs {s2.ambient_degree}"
        )
    lhs = reduce_mod_ideal(s1.numerator * s2.denominator, ideal)
    rhs = reduce_mod_ideal(s2.numerator * s1.denominator, ideal)
    if not lhs and not rhs:
        raise IndeterminateError("both sections vanish identically on the curve")
    if not lhs or not rhs:
        return False, None
    e = max(rhs.terms)
    c = Fraction(lhs.coefficient(e)) / Fraction(rhs.coefficient(e))
    if not c or lhs != rhs.scalar_mul(c):
        return False, None
    return True, (c.numerator if c.denominator == 1 else c)


def polynomial_section(p: MultiPoly) -> RationalSection:
    return RationalSection(p, MultiPoly.one(p.nx), p.x_degree())


# ---------------------------------------------------------------------- resultants
class _BinaryForms:
    """Two binary forms viewed as a Koszul datum on the projective line."""

    def __init__(self, F0: MultiPoly, F1: MultiPoly):
        self.forms = [F0, F1]
        self.degrees = [F0.x_degree(), F1.x_degree()]
        self.r = 1


def resultant_complex(F0: MultiPoly, F1: MultiPoly, m: int) -> GradedFreeComplex:
    from mhessian.freecomplex import global_sections_row

    return global_sections_row(_BinaryForms(F0, F1), m)


def resultant_via_div(F0: MultiPoly, F1: MultiPoly, m: int = None, seed: int = 0):
    """Resultant of two binary forms as the determinant of the twisted Koszul complex."""
    for F in (F0, F1):
        if F.ny or F.nx != 2 or not F or not F.is_homogeneous() or F.x_degree() < 1:
            raise ContractError("expected nonzero binary forms of positive degree")
    d0, d1 = F0.x_degree(), F1.x_degree()
    if m is None:
        m = d0 + d1 - 1
    if m < d0 + d1 - 1:
        raise DomainError(f"twist m={m} is below d0 + d1 - 1 = {d0 + d1 - 1}")
    C = resultant_complex(F0, F1, m)
    oracle = NonvanishingOracle(OracleMode.EXACT_GENERIC, seed=seed)
    try:
        chain = select_minor_chain(C, oracle)
    except DegenerateComplexError:
        return 0
    return determinant_of_complex(C, chain).value()
