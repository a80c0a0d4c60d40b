import random
from fractions import Fraction

import pytest

from mhessian.detdiv import (
    MinorChain,
    NonvanishingOracle,
    OracleMode,
    RationalSection,
    compare_on_curve,
    determinant_of_complex,
    expected_ranks,
    hessian_complex,
    hessian_div,
    minor_degree,
    polynomial_section,
    resultant_complex,
    resultant_via_div,
    select_minor_chain,
)
from mhessian.errors import (
    ContractError,
    DegenerateComplexError,
    DomainError,
    IndeterminateError,
    NotGenericallyExactError,
)
from mhessian.freecomplex import GradedFreeComplex, GradedFreeModule, PolyMatrix, global_sections_row
from mhessian.linalg import det_rational
from mhessian.oracles import classical_hessian, degree_report, plane_curve, random_form, sylvester_resultant
from mhessian.polyring import MultiPoly, parse_poly

FERMAT = parse_poly("x0^3 + x1^3 + x2^3")
GENERIC = NonvanishingOracle(OracleMode.EXACT_GENERIC)


def two_term(entries, nx=3, degree=0):
    """``0 -> Q^k -> Q^k -> 0`` with a square matrix of forms of one degree."""
    k = len(entries)
    mod = lambda tag, t: GradedFreeModule([((tag, i), t) for i in range(k)])
    A, B = mod("a", degree), mod("b", 0)
    d = PolyMatrix(A, B, {(i, j): v for i, row in enumerate(entries) for j, v in enumerate(row) if v}, nx)
    return GradedFreeComplex([A, B], [d], nx)


# ---------------------------------------------------------------------- ranks and chains
def test_expected_ranks():
    one = MultiPoly.one(3)
    assert expected_ranks(two_term([[one, 0], [0, one]])) == [2]
    from mhessian.freecomplex import total_complex_plane_curve

    assert expected_ranks(total_complex_plane_curve(FERMAT, 1)) == [4, 7, 0]
    A = GradedFreeModule([("a", 0)])
    with pytest.raises(NotGenericallyExactError):
        expected_ranks(GradedFreeComplex([A], [], 3))


def test_identity_chain_takes_all_columns():
    one = MultiPoly.one(3)
    C = two_term([[one, 0, 0], [0, one, 0], [0, 0, one]])
    chain = select_minor_chain(C, GENERIC)
    assert sorted(chain.columns[1]) == [0, 1, 2]
    assert determinant_of_complex(C, chain).value() in (1, -1)


def test_rank_one_complex_gives_its_entry():
    G = parse_poly("x0^2 - 3*x1*x2")
    C = two_term([[G]], degree=2)
    s = determinant_of_complex(C, select_minor_chain(C, GENERIC))
    assert s.numerator == G and s.denominator == 1 and s.ambient_degree == 2


def test_singular_square_complex_is_degenerate():
    x0 = parse_poly("x0", nx=3)
    with pytest.raises(DegenerateComplexError):
        select_minor_chain(two_term([[x0, x0], [x0, x0]], degree=1), GENERIC)


def test_modular_oracle_needs_large_prime():
    with pytest.raises(DomainError):
        NonvanishingOracle(prime=101)


def test_chain_is_deterministic_given_seed():
    C = hessian_complex(plane_curve(FERMAT), 1)
    o = NonvanishingOracle(seed=3).for_curve(plane_curve(FERMAT))
    assert select_minor_chain(C, o).to_json() == select_minor_chain(C, o).to_json()


def test_chain_interlocks():
    curve = plane_curve(FERMAT, 2)
    C = hessian_complex(curve, 2)
    chain = select_minor_chain(C, NonvanishingOracle(seed=0).for_curve(curve))
    ranks = C.ranks()
    prev = []
    for i in range(1, C.length):
        S = chain.columns.get(i, [])
        assert len(S) == chain.expected_ranks[i - 1]
        assert sorted(chain.rows.get(i, [])) == sorted(set(range(ranks[i - 1])) - set(prev))
        prev = S
    assert chain.backtracks <= 100


# ---------------------------------------------------------------------- determinant functor on constant complexes
class _ScalarKoszul:
    """Koszul complex of nonzero constants, faking a curve with degree-0 forms."""

    def __init__(self, values):
        self.forms = [MultiPoly.constant(v, 2) for v in values]
        self.degrees = [0] * len(values)
        self.r = 1


def _torsion_brute_force(C, rng):
    """Alternating product of det[d(b_{i+1}) | b_i] over random lifts ``b_i``."""
    ranks = C.ranks()
    r = expected_ranks(C)
    mats = [[[C.differential(i).entry(a, b).constant_term() for b in range(ranks[i])]
             for a in range(ranks[i - 1])] for i in range(1, C.length)]
    lifts = [[[rng.randint(-9, 9) for _ in range(ranks[i])] for _ in range(r[i - 1])]
             for i in range(1, C.length)]
    lifts.append([])
    total = Fraction(1)
    for i in range(C.length):
        # basis of term i: images of lifts from term i+1, then lifts chosen in term i
        cols = []
        if i + 1 < C.length:
            M = mats[i]
            cols += [[sum(M[a][b] * v[b] for b in range(len(v))) for a in range(len(M))]
                     for v in lifts[i]]
        if i >= 1:
            cols += lifts[i - 1]
        if not cols:
            continue
        square = [[c[a] for c in cols] for a in range(ranks[i])]
        det = Fraction(det_rational(square))
        if det == 0:
            return None
        total *= det if i % 2 == 0 else 1 / det
    return total


@pytest.mark.parametrize("values", [[2], [3, -1], [1, 2, 5], [0, 4, 7]])
def test_determinant_matches_brute_force_functor(values):
    C = global_sections_row(_ScalarKoszul(values), 0)
    assert max(C.ranks()) <= 6
    rng = random.Random(sum(values))
    vals = set()
    for seed in range(4):
        chain = select_minor_chain(C, GENERIC.with_seed(seed))
        vals.add(determinant_of_complex(C, chain).value())
    assert len({abs(Fraction(v)) for v in vals}) == 1
    brute = None
    while brute is None:
        brute = _torsion_brute_force(C, rng)
    ref = next(iter(vals))
    assert ref in (brute, -brute)


@pytest.mark.parametrize("seed", range(4))
def test_chain_independence_on_resultant_complexes(seed):
    rng = random.Random(seed)
    F0 = random_form(2, 2, rng, -5, 5)
    F1 = random_form(2, 3, rng, -5, 5)
    C = resultant_complex(F0, F1, 6)
    values = set()
    for s in range(3):
        chain = select_minor_chain(C, GENERIC.with_seed(s))
        values.add(determinant_of_complex(C, chain).value())
    assert len({abs(Fraction(v)) for v in values}) == 1
    brute = None
    while brute is None:
        brute = _torsion_brute_force(C, rng)
    assert next(iter(values)) in (brute, -brute)


# ---------------------------------------------------------------------- resultants
def test_resultant_examples():
    assert resultant_via_div(parse_poly("x0 - x1", nx=2), parse_poly("x0 + x1", nx=2), 1) in (2, -2)
    assert resultant_via_div(parse_poly("x0^2", nx=2), parse_poly("x1^2", nx=2), 3) in (1, -1)
    assert resultant_via_div(parse_poly("x0^2 - x1^2", nx=2), parse_poly("x0 - x1", nx=2)) == 0
    with pytest.raises(DomainError):
        resultant_via_div(parse_poly("x0^2", nx=2), parse_poly("x1^2", nx=2), 2)


def test_square_resultant_complex_is_the_sylvester_matrix():
    F0, F1 = parse_poly("x0^2 + 3*x0*x1 - x1^2", nx=2), parse_poly("2*x0 - 5*x1", nx=2)
    C = resultant_complex(F0, F1, 2)
    assert C.ranks() == [3, 3, 0]
    chain = select_minor_chain(C, GENERIC)
    assert len(chain.columns[1]) == 3
    assert determinant_of_complex(C, chain).value() in (sylvester_resultant(F0, F1), -sylvester_resultant(F0, F1))


# ---------------------------------------------------------------------- Hessians
def test_fermat_m1_against_classical_hessian():
    curve = plane_curve(FERMAT)
    s = hessian_div(curve, 1)
    assert s.ambient_degree == 3
    H = classical_hessian(FERMAT)
    assert H == parse_poly("216*x0*x1*x2")
    ok, c = compare_on_curve(s, polynomial_section(H), curve.ideal())
    assert ok and c != 0


def test_cone_and_explicit_pipelines_agree():
    curve = plane_curve(FERMAT)
    s1 = hessian_div(curve, 1, plane_explicit=True)
    s2 = hessian_div(curve, 1, plane_explicit=False)
    assert compare_on_curve(s1, s2, curve.ideal())[0]


@pytest.mark.parametrize("mode", list(OracleMode))
def test_oracle_modes_agree_on_curve(mode):
    curve = plane_curve(FERMAT)
    ref = hessian_div(curve, 1)
    s = hessian_div(curve, 1, NonvanishingOracle(mode, seed=2))
    assert compare_on_curve(ref, s, curve.ideal())[0]


def test_denominator_is_not_in_the_ideal():
    curve = plane_curve(parse_poly("x0^3 - x0*x2^2 + 2*x1^3 + x1*x2^2 - x2^3"))
    s = hessian_div(curve, 1, NonvanishingOracle(seed=5))
    ideal = curve.ideal()
    assert ideal.reduce(s.denominator) and ideal.reduce(s.numerator)
    assert s.ambient_degree == degree_report(curve, 1).ambient_degree_a


def test_space_curve_degree_law():
    from mhessian.oracles import CurveSpec

    curve = CurveSpec(3, [parse_poly("x0^2 + x1^2 + x2^2 + x3^2"),
                          parse_poly("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2")])
    s = hessian_div(curve, 1)
    assert s.ambient_degree == 4


def test_compare_on_curve_behaviour():
    curve = plane_curve(FERMAT)
    s = hessian_div(curve, 1)
    assert compare_on_curve(s, s, curve.ideal()) == (True, 1)
    noise = polynomial_section(parse_poly("x0^3 + 2*x1^2*x2 - x0*x1*x2"))
    assert compare_on_curve(s, noise, curve.ideal()) == (False, None)
    with pytest.raises(ContractError):
        compare_on_curve(s, polynomial_section(parse_poly("x0^2")), curve.ideal())
    zero = RationalSection(FERMAT, MultiPoly.one(3), 3)
    with pytest.raises(IndeterminateError):
        compare_on_curve(zero, zero, curve.ideal())


def test_minor_degree_matches_determinant():
    curve = plane_curve(FERMAT)
    C = hessian_complex(curve, 1)
    chain = select_minor_chain(C, NonvanishingOracle().for_curve(curve))
    s = determinant_of_complex(C, chain)
    predicted = sum((-1) ** (i + 1) * minor_degree(C, i, chain.rows[i], chain.columns[i])
                    for i in chain.columns)
    assert s.ambient_degree == predicted == -3


def test_section_json_round_trip():
    s = hessian_div(plane_curve(FERMAT), 1)
    back = RationalSection.from_json(s.to_json(), 3)
    assert (back.numerator, back.denominator, back.ambient_degree) == (s.numerator, s.denominator, 3)
    assert isinstance(s.chain, MinorChain)
    with pytest.raises(ContractError):
        RationalSection(FERMAT, MultiPoly.zero(3), 3)
