"""Exact adjoint polynomials of rational convex polytopes."""

from .adjoint import (
    KernelDimensionError,
    interpolation_adjoint,
    pulling_triangulation,
    verify_orders,
    warren_adjoint,
)
from .arrangement import Arrangement, FlatData, point_residual
from .poly import HomoPoly, format_poly, parse_poly, vanishing_order_along, vanishing_order_at_point
from .polytope import GeometryError, LinearSubspace, Polytope, UnboundedError, polar_dual
from .residue import PolytopeForm, ResidueError, canonical_form, recursion_check, residue_along

__all__ = [
    "Arrangement",
    "FlatData",
    "GeometryError",
    "HomoPoly",
    "KernelDimensionError",
    "LinearSubspace",
    "Polytope",
    "PolytopeForm",
    "ResidueError",
    "UnboundedError",
    "canonical_form",
    "format_poly",
    "interpolation_adjoint",
    "parse_poly",
    "point_residual",
    "polar_dual",
    "pulling_triangulation",
    "recursion_check",
    "residue_along",
    "vanishing_order_along",
    "vanishing_order_at_point",
    "verify_orders",
    "warren_adjoint",
]
