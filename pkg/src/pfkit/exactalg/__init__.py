"""Exact algebra kernel: integer polynomials, strong Groebner bases, rings."""

from .zpoly import PolyRing, TermOrder, ZPoly, det_zpoly
from .groebner import (
    contains_one,
    eliminate,
    groebner,
    in_subring,
    invert_mod,
    normal_form,
    saturate,
    saturate_many,
)
from .rings import (
    GF,
    GF2FunctionField,
    FunctionField,
    NotInvertible,
    NumberRing,
    ProductRing,
    QQ,
    QuotientRing,
    RationalRing,
    Ring,
    TrivialRing,
    ZZ,
)
from .exprparse import parse_expr, parse_ring
from .factorbase import factor_over_basis
