"""Groebner bases and related algorithms over QQ, prime fields and twin-floats."""

from .coeff import QQ, PrimeField, TwinFloatField, with_increasing_precision
from .errors import GforgeError
from .expr import format_polynomial, parse_polynomial
from .gb import CancelToken, GBasis, Ideal, ProgressSink, ReducedGBasis, normal_form
from .idealops import LT, MonomialIdeal, elim, hilbert_series, is_zero_dim, min_subset_of_gens
from .modrecon import ResidueModulus, crt_poly, fault_tolerant_rat_reconstruct, rat_reconstruct, rat_reconstruct_poly
from .order import OrderMatrix, elim_mat, make_deglex, make_lex, make_std_deg_rev_lex
from .poly import PolyAlgebraHom, PolyRing, Polynomial
from .special import gin, implicit_hypersurface, rgin, toric
from .zerodim import ideal_of_points, min_poly_quot, quotient_basis

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "TwinFloatField",
    "with_increasing_precision",
    "GforgeError",
    "format_polynomial",
    "parse_polynomial",
    "CancelToken",
    "GBasis",
    "Ideal",
    "ProgressSink",
    "ReducedGBasis",
    "normal_form",
    "LT",
    "MonomialIdeal",
    "elim",
    "hilbert_series",
    "is_zero_dim",
    "min_subset_of_gens",
    "ResidueModulus",
    "crt_poly",
    "fault_tolerant_rat_reconstruct",
    "rat_reconstruct",
    "rat_reconstruct_poly",
    "OrderMatrix",
    "elim_mat",
    "make_deglex",
    "make_lex",
    "make_std_deg_rev_lex",
    "PolyAlgebraHom",
    "PolyRing",
    "Polynomial",
    "gin",
    "implicit_hypersurface",
    "rgin",
    "toric",
    "ideal_of_points",
    "min_poly_quot",
    "quotient_basis",
]
