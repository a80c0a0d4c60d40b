"""Exact multivariate Hessians of projective curves via determinants of complexes."""
from mhessian.detdiv import (
    NonvanishingOracle,
    OracleMode,
    RationalSection,
    compare_on_curve,
    hessian_div,
    resultant_via_div,
)
from mhessian.errors import MHessianError, ParseError
from mhessian.freecomplex import GradedFreeComplex, GradedFreeModule, PolyMatrix
from mhessian.jets import EulerParams, JetElement, euler_dual_map, polar, universal_jet
from mhessian.kernels import BACKEND
from mhessian.oracles import (
    CurveSpec,
    classical_hessian,
    degree_report,
    plane_curve,
    sylvester_resultant,
    wronskian_weight,
)
from mhessian.polyring import IdealSpec, MultiPoly, format_poly, parse_poly, reduce_mod_ideal

__all__ = [
    "BACKEND", "CurveSpec", "EulerParams", "GradedFreeComplex", "GradedFreeModule",
    "IdealSpec", "JetElement", "MHessianError", "MultiPoly", "NonvanishingOracle",
    "OracleMode", "ParseError", "PolyMatrix", "RationalSection", "classical_hessian",
    "compare_on_curve", "degree_report", "euler_dual_map", "format_poly", "hessian_div",
    "parse_poly", "plane_curve", "polar", "reduce_mod_ideal", "resultant_via_div",
    "sylvester_resultant", "universal_jet", "wronskian_weight",
]
