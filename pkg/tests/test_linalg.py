import random
from fractions import Fraction

import pytest
import sympy

from mhessian.errors import ContractError, ReductionError
from mhessian.linalg import (
    det_bareiss_poly,
    det_interpolate,
    det_poly,
    det_rational,
    exact_divide,
    rank_profile_exact,
)
from mhessian.oracles import random_form
from mhessian.polyring import MultiPoly, parse_poly


def to_sympy(p, xs):
    return sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
               * sympy.prod([x ** k for x, k in zip(xs, e)]) for e, c in p.terms.items())


def form_matrix(n, seed):
    """Rows of degrees 1, columns of degree shifts 0 or 1: det is homogeneous."""
    rng = random.Random(seed)
    shifts = [rng.randint(0, 1) for _ in range(n)]
    M = [[random_form(3, 1 + shifts[j], rng, -3, 3) for j in range(n)] for _ in range(n)]
    return M, n + sum(shifts)


@pytest.mark.parametrize("seed", range(4))
def test_determinant_routes_agree_with_sympy(seed):
    M, degree = form_matrix(3 + seed % 2, seed)
    xs = sympy.symbols("x0:3")
    ref = sympy.expand(sympy.Matrix([[to_sympy(v, xs) for v in r] for r in M]).det())
    a = det_bareiss_poly(M)
    b = det_interpolate(M, degree)
    assert a == b
    assert sympy.expand(to_sympy(a, xs) - ref) == 0
    assert det_poly(M, degree, method="interpolate") == a


def test_interpolation_detects_a_wrong_degree():
    M, degree = form_matrix(3, 7)
    if det_bareiss_poly(M):
        with pytest.raises(ReductionError):
            det_interpolate(M, degree - 1)


def test_rational_determinants():
    assert det_rational([]) == 1
    assert det_rational([[Fraction(1, 2), 1], [1, 2]]) == 0
    assert det_rational([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)
    rng = random.Random(3)
    A = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)] for _ in range(5)]
    ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in A]).det()
    assert det_rational(A) == Fraction(int(ref.p), int(ref.q))


def test_rank_profile():
    assert rank_profile_exact([[0, 1, 1], [0, 2, 2]], 3) == [1]
    assert rank_profile_exact([[1, 2, 3], [2, 4, 7]], 3) == [0, 2]
    assert rank_profile_exact([], 4) == []


def test_empty_and_bad_matrices():
    assert det_poly([], nx=3) == MultiPoly.one(3)
    with pytest.raises(ContractError):
        det_poly([])
    x = parse_poly("x0", nx=3)
    with pytest.raises(ContractError):
        det_poly([[x, x]])
    with pytest.raises(ContractError):
        det_poly([[x]], method="cofactor")


def test_exact_division():
    a = parse_poly("x0^2 - x1^2", nx=3)
    assert exact_divide(a, parse_poly("x0 - x1", nx=3)) == parse_poly("x0 + x1", nx=3)
    with pytest.raises(ReductionError):
        exact_divide(a, parse_poly("x0 - x2", nx=3))
