import json
import random

import pytest

from mhessian.errors import DomainError, LayoutError
from mhessian.freecomplex import (
    ComplexMap,
    GradedFreeComplex,
    GradedFreeModule,
    PolyMatrix,
    check_complex,
    check_map,
    cone,
    euler_cone,
    euler_epsilon_complex_map,
    global_sections_row,
    koszul_jet_complex,
    plane_jet_order,
    shift,
    tau_bar,
    tau_tilde,
    total_complex_plane_curve,
)
from mhessian.oracles import CurveSpec, degree_report, plane_curve, random_form
from mhessian.polyring import MultiPoly, binomial, parse_poly

FERMAT = parse_poly("x0^3 + x1^3 + x2^3")
CUBIC = parse_poly("x0^3 + 2*x0^2*x1 - x1^2*x2 + x0*x2^2 + 3*x2^3 - x1^3")
SPACE = CurveSpec(3, [parse_poly("x0^2 + x1^2 + x2^2 + x3^2"),
                      parse_poly("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2")])


def test_koszul_plane_layout():
    K = koszul_jet_complex(plane_curve(FERMAT), 1, 2)
    assert K.ranks() == [10, 4]
    assert K.terms[1].twists[0] == 1 - 3
    assert check_complex(K).ok


def test_koszul_space_curve_squares_vanish_exactly():
    K = koszul_jet_complex(SPACE, 1, 3)
    # term j has C(2, j) summands of jets of order 3 - j in four variables
    assert K.ranks() == [binomial(3 + 4, 4), 2 * binomial(2 + 4, 4), binomial(1 + 4, 4)]
    rep = check_complex(K)
    assert rep.ok and rep.squares_vanish and rep.checked_entries > 0


@pytest.mark.parametrize("m,rank", [(1, 3), (2, 6)])
def test_global_sections_plane(m, rank):
    G = global_sections_row(plane_curve(FERMAT), m)
    assert G.ranks() == [rank, 0]


def test_global_sections_space_exact():
    G = global_sections_row(SPACE, 4)
    assert G.ranks() == [35, 20, 1]
    assert check_complex(G).ok


def test_tau_bar_degree_zero_block():
    tb = tau_bar(plane_curve(FERMAT), 1, 2)
    B = tb.block(0)
    assert B.shape == (10, 3)
    col = B.cols.index(((), (1, 0, 0)))
    assert B.entry(B.rows.index(((), (0, 0, 0))), col) == parse_poly("x0", nx=3)
    assert B.entry(B.rows.index(((), (1, 0, 0))), col) == 1
    nonzero = [i for (i, j) in B.entries if j == col]
    assert len(nonzero) == 2
    assert not tb.block(1).entries


@pytest.mark.parametrize("F", [FERMAT, CUBIC])
def test_tau_bar_commutes_mod_curve(F):
    curve = plane_curve(F, 2)
    assert check_map(tau_bar(curve, 2, 5), curve.ideal()).ok


def test_euler_map_commutes_only_mod_curve():
    curve = plane_curve(CUBIC, 1)
    e = euler_epsilon_complex_map(curve, 1, 2)
    assert e.block(0).shape == (4, 10)
    assert e.block(1).shape == (1, 4)
    assert check_map(e, curve.ideal()).ok
    assert not check_map(e).ok


def test_euler_cone_ranks():
    C = euler_cone(plane_curve(FERMAT), 1, 2)
    assert C.ranks() == [4, 11, 4]


def test_cone_of_identity_is_exact():
    M = GradedFreeModule([("g", 0)])
    C = GradedFreeComplex([M], [], 3)
    ident = ComplexMap(C, C, {0: PolyMatrix(M, M, {(0, 0): MultiPoly.one(3)}, 3)})
    K = cone(ident)
    assert K.ranks() == [1, 1]
    assert K.differential(1).entry(0, 0) in (MultiPoly.one(3), -MultiPoly.one(3))
    assert K.euler_characteristic() == 0


def test_cone_euler_characteristic():
    e = euler_epsilon_complex_map(plane_curve(FERMAT), 2, 5)
    K = cone(e)
    chi = lambda C: C.euler_characteristic() * (-1) ** C.low
    assert chi(K) == chi(e.target) - chi(e.source)
    assert check_complex(K, plane_curve(FERMAT).ideal()).ok


def test_shift_flips_signs():
    C = koszul_jet_complex(plane_curve(FERMAT), 1, 2)
    S = shift(C, 1)
    assert S.low == -1
    assert S.differential(1).entries == (-C.differential(1)).entries
    assert shift(S, 1).differential(1).entries == C.differential(1).entries


def test_tau_tilde_layout():
    tt = tau_tilde(plane_curve(FERMAT), 1, 2)
    B = tt.block(0)
    assert B.shape == (11, 3)
    # one padded row from the order-0 summand twisted by m - d, never hit by jets
    padded = [i for i, lab in enumerate(B.rows.labels) if lab[0] == "tgt"]
    assert len(padded) == 1
    assert all(B.rows.labels[i][0] == "src" for (i, _j) in B.entries)
    assert check_map(tt, plane_curve(FERMAT).ideal()).ok


@pytest.mark.parametrize("m,ranks", [(1, [4, 11, 7, 0]), (2, [35, 76, 41, 0])])
def test_total_complex_ranks(m, ranks):
    C = total_complex_plane_curve(FERMAT, m)
    assert C.ranks() == ranks
    assert C.euler_characteristic() == 0


def test_total_complex_is_a_complex_only_mod_curve():
    C = total_complex_plane_curve(CUBIC, 1)
    assert check_complex(C, plane_curve(CUBIC).ideal()).ok
    assert not check_complex(C).ok


@pytest.mark.parametrize("d", [3, 4, 5])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_total_complex_euler_characteristic(d, m):
    n1 = plane_jet_order(d, m) + 1
    assert n1 == degree_report(plane_curve(parse_poly(f"x0^{d} + x1^{d} + x2^{d}")), m).rank_n_plus_1
    F = random_form(3, d, random.Random(d * 10 + m))
    C = total_complex_plane_curve(F, m)
    assert C.euler_characteristic() == binomial(m - d + 2, 2) - binomial(m + 2, 2) + n1 == 0


def test_total_complex_degree_guard():
    with pytest.raises(DomainError):
        total_complex_plane_curve(parse_poly("x0^2 + x1^2 + x2^2"), 1)


def test_cone_matches_total_complex_ranks():
    for F in (FERMAT, CUBIC):
        K = cone(tau_tilde(plane_curve(F), 1, 2))
        assert K.ranks() == total_complex_plane_curve(F, 1).ranks()


def test_space_cone():
    K = cone(tau_tilde(SPACE, 1, 3))
    assert K.ranks() == [15, 45, 35, 5, 0]
    assert check_complex(K, SPACE.ideal()).ok


def test_fault_injection_is_located():
    C = koszul_jet_complex(plane_curve(FERMAT), 1, 2)
    d = C.differential(1)
    (i, j), v = sorted(d.entries.items())[0]
    bad = dict(d.entries)
    bad[(i, j)] = v * parse_poly("x0", nx=3)
    Cb = GradedFreeComplex(C.terms, [PolyMatrix(d.rows, d.cols, bad, 3)], 3)
    rep = check_complex(Cb)
    assert not rep.ok and not rep.homogeneous
    assert (rep.violation["row"], rep.violation["col"]) == (i, j)

    # a homogeneous but wrong entry breaks d^2 = 0 instead
    G = global_sections_row(SPACE, 4)
    d2 = G.differential(2)
    (i, j), v = sorted(d2.entries.items())[0]
    bad = dict(d2.entries)
    bad[(i, j)] = v + MultiPoly.one(4)
    Gb = GradedFreeComplex(G.terms, [G.differential(1), PolyMatrix(d2.rows, d2.cols, bad, 4)], 4)
    rep = check_complex(Gb)
    assert rep.homogeneous and not rep.squares_vanish
    assert rep.violation["kind"] == "square"


def test_layout_errors():
    A = GradedFreeModule([("a", 0)])
    B = GradedFreeModule([("b", 0), ("c", 0)])
    with pytest.raises(LayoutError):
        PolyMatrix(A, B, {(1, 0): MultiPoly.one(3)}, 3)
    with pytest.raises(LayoutError):
        GradedFreeComplex([A, B], [PolyMatrix(A, A, {}, 3)], 3)


def test_json_serialization():
    C = total_complex_plane_curve(FERMAT, 1)
    data = json.loads(C.to_json_str())
    assert [len(t) for t in data["terms"]] == C.ranks()
    assert data["differentials"][0]["shape"] == [4, 11]
