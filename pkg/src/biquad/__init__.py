"""Exact analysis of automorphisms of smooth curves of bidegree (a,b) in P1 x P1."""

from .bipoly import BiPoly, pullback, pullback_by_weights
from .classify import (
    InvarianceCertificate,
    TheoremViolation,
    certify,
    classify_corner_case,
    enumerate_diagonal_auts,
    enumerate_swap_auts,
    order_menu,
    quotient_genus,
)
from .families import FamilySpec, build_family, validate_family
from .parser import parse_automorphism, parse_bipoly, parse_scalar
from .scalars import CycloScalar, zeta
from .smooth import corner_report, genus, is_smooth
from .surfauto import DiagonalAut, SurfaceAut, SwapNormalForm

__all__ = [
    "BiPoly",
    "CycloScalar",
    "DiagonalAut",
    "FamilySpec",
    "InvarianceCertificate",
    "SurfaceAut",
    "SwapNormalForm",
    "TheoremViolation",
    "build_family",
    "certify",
    "classify_corner_case",
    "corner_report",
    "enumerate_diagonal_auts",
    "enumerate_swap_auts",
    "genus",
    "is_smooth",
    "order_menu",
    "parse_automorphism",
    "parse_bipoly",
    "parse_scalar",
    "pullback",
    "pullback_by_weights",
    "quotient_genus",
    "validate_family",
    "zeta",
]
