import random

import pytest
import sympy

from mhessian.errors import ContractError, PrecisionError, SingularityError
from mhessian.oracles import (
    CurveSpec,
    QuadExt,
    TruncatedSeries,
    branch,
    branch_parameterize,
    classical_hessian,
    degree_report,
    fermat_flexes,
    plane_curve,
    random_smooth_plane_curve,
    section_basis,
    smoothness_check,
    sylvester_matrix,
    sylvester_resultant,
    vanishing_sequence,
    wronskian_weight,
)
from mhessian.polyring import MultiPoly, parse_poly

FERMAT = parse_poly("x0^3 + x1^3 + x2^3")
ELLIPTIC = parse_poly("x1^2*x2 - x0^3 - x0*x2^2")


def P2(text):
    return parse_poly(text, nx=2)


# ---------------------------------------------------------------------- curves and degrees
def test_curve_spec_validation():
    with pytest.raises(ContractError):
        CurveSpec(2, [FERMAT, FERMAT])
    with pytest.raises(ContractError):
        CurveSpec(2, [parse_poly("x0^2 + x1")])
    with pytest.raises(ContractError):
        CurveSpec(2, [FERMAT], degrees=[4])
    assert plane_curve(FERMAT).degree == 3


@pytest.mark.parametrize("m,expected", [
    (1, (3, 3, [3], 9)), (2, (6, 12, [15], 36)), (3, (9, 27, [35], 81)),
])
def test_degree_report_cubic(m, expected):
    rep = degree_report(plane_curve(FERMAT), m)
    assert (rep.rank_n_plus_1, rep.ambient_degree_a, rep.moduli_degrees_b, rep.total_flex_weight) == expected
    assert rep.plucker_total == rep.total_flex_weight


def test_degree_report_quartic_m1():
    rep = degree_report(plane_curve(parse_poly("x0^4 + x1^4 + x2^4")), 1)
    assert (rep.ambient_degree_a, rep.genus, rep.total_flex_weight) == (6, 3, 24)


# ---------------------------------------------------------------------- Hessian and resultant oracles
def test_classical_hessians():
    assert classical_hessian(FERMAT) == parse_poly("216*x0*x1*x2")
    assert classical_hessian(parse_poly("x0*x1*x2")) == parse_poly("2*x0*x1*x2")


def test_classical_hessian_against_sympy():
    F = random_smooth_plane_curve(3, seed=1)
    xs = sympy.symbols("x0:3")
    expr = sum(c * sympy.prod([x ** k for x, k in zip(xs, e)]) for e, c in F.terms.items())
    H = sympy.expand(sympy.hessian(expr, xs).det())
    ours = classical_hessian(F)
    assert sympy.expand(sum(c * sympy.prod([x ** k for x, k in zip(xs, e)])
                            for e, c in ours.terms.items()) - H) == 0


def test_sylvester_examples():
    assert sylvester_resultant(P2("x0 - x1"), P2("x0 + x1")) == 2
    assert sylvester_resultant(P2("x0^2"), P2("x1^2")) == 1
    assert sylvester_resultant(P2("x0^2 - x1^2"), P2("x0 - x1")) == 0
    assert len(sylvester_matrix(P2("x0^2"), P2("x1^2"))) == 4


@pytest.mark.parametrize("seed", range(5))
def test_sylvester_against_sympy(seed):
    rng = random.Random(seed)
    d0, d1 = rng.randint(1, 4), rng.randint(1, 4)
    c0 = [rng.randint(-5, 5) for _ in range(d0 + 1)]
    c1 = [rng.randint(-5, 5) for _ in range(d1 + 1)]
    c0[0] = c0[0] or 1
    c1[0] = c1[0] or 1
    F0 = MultiPoly({(d0 - k, k): c for k, c in enumerate(c0)}, 2)
    F1 = MultiPoly({(d1 - k, k): c for k, c in enumerate(c1)}, 2)
    t = sympy.symbols("t")
    ref = sympy.resultant(sum(c * t ** (d0 - k) for k, c in enumerate(c0)),
                          sum(c * t ** (d1 - k) for k, c in enumerate(c1)), t)
    assert sylvester_resultant(F0, F1) == int(ref)


# ---------------------------------------------------------------------- series
def test_truncated_series_arithmetic():
    t = TruncatedSeries.variable(8)
    one_minus = TruncatedSeries([1], 8) - t
    inv = one_minus.inverse()
    assert inv.coefficients == [1] * 9
    assert (t * t).valuation() == 2
    assert TruncatedSeries([0, 0, 3, 1], 8).shift_down(2).coefficients[:2] == [3, 1]


def test_quadratic_extension():
    w = QuadExt.omega()
    assert w * w * w == QuadExt(1)
    assert w * w + w + 1 == QuadExt(0)
    assert (w - 1) * (w - 1).inverse() == QuadExt(1)


def test_branch_satisfies_curve():
    b = branch(FERMAT, (1, -1, 0), 20)
    assert FERMAT.evaluate(b.coords).is_zero()
    u, v = branch_parameterize(ELLIPTIC, (0, 0, 1), 12)
    assert u.order == 12


def test_branch_errors():
    nodal = parse_poly("x1^2*x2 - x0^3 - x0^2*x2")
    with pytest.raises(SingularityError):
        branch(nodal, (0, 0, 1), 10)
    with pytest.raises(ContractError):
        branch(FERMAT, (1, 1, 1), 10)


# ---------------------------------------------------------------------- weights
def test_section_basis_size():
    for m in (1, 2, 3, 4):
        assert len(section_basis(FERMAT, m)) == degree_report(plane_curve(FERMAT), m).rank_n_plus_1


def test_fermat_flexes_lie_on_curve():
    pts = fermat_flexes()
    assert len(pts) == 9
    for p in pts:
        assert FERMAT.evaluate(p) == QuadExt(0)
        assert sum(1 for c in p if c == QuadExt(0)) == 1


def test_weights_on_elliptic_curve():
    # (0, 1, 0) is the flex at infinity, (0, 0, 1) an ordinary point
    assert wronskian_weight(ELLIPTIC, 1, (0, 1, 0)) == 1
    assert wronskian_weight(ELLIPTIC, 1, (0, 0, 1)) == 0
    assert vanishing_sequence(ELLIPTIC, 1, (0, 0, 1)) == [0, 1, 2]
    assert vanishing_sequence(ELLIPTIC, 1, (0, 1, 0)) == [0, 1, 3]


def test_fermat_m2_weight_and_sequence():
    assert vanishing_sequence(FERMAT, 2, (1, -1, 0)) == [0, 1, 2, 3, 4, 6]
    assert wronskian_weight(FERMAT, 2, (1, -1, 0)) == 1


def test_weight_needs_enough_precision():
    with pytest.raises(PrecisionError):
        wronskian_weight(FERMAT, 2, (1, -1, 0), order=6)


def test_weight_matches_vanishing_sequence():
    for pt in [(0, 1, 0), (0, 0, 1)]:
        seq = vanishing_sequence(ELLIPTIC, 2, pt)
        assert wronskian_weight(ELLIPTIC, 2, pt) == sum(a - i for i, a in enumerate(seq))


# ---------------------------------------------------------------------- smoothness
def test_smoothness():
    assert smoothness_check(plane_curve(FERMAT)) is True
    assert smoothness_check(plane_curve(parse_poly("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2"))) is False
    assert smoothness_check(plane_curve(parse_poly("x1^2*x2 - x0^3 - x0^2*x2"))) is False
    space = CurveSpec(3, [parse_poly("x0^2 + x1^2 + x2^2 + x3^2"),
                          parse_poly("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2")])
    assert smoothness_check(space) is True


def test_random_smooth_curves_are_seeded():
    assert random_smooth_plane_curve(3, seed=1) == random_smooth_plane_curve(3, seed=1)
    F = random_smooth_plane_curve(4, seed=2)
    assert F.is_homogeneous(4) and smoothness_check(plane_curve(F)) is True
