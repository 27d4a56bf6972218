"""Abelian connection, flat sections and the Fedosov star product."""

from .connection import (
    AbelianConnection,
    apply_D,
    build_r,
    central_curvature,
    fedosov_curvature,
    fixed_point_map,
    fixed_point_residual,
    lift,
    project_center,
    quantize_Q,
    solve_D,
)
from .functions import StarFunction
from .star import moyal_star_product, star_commutator, star_product

__all__ = [
    "AbelianConnection",
    "StarFunction",
    "apply_D",
    "build_r",
    "central_curvature",
    "fedosov_curvature",
    "fixed_point_map",
    "fixed_point_residual",
    "lift",
    "moyal_star_product",
    "project_center",
    "quantize_Q",
    "solve_D",
    "star_commutator",
    "star_product",
]
