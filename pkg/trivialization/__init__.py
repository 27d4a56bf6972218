"""Local trivialization of the algebra of flat sections."""

from .explicit import EXPANSION_DEGREE, hamiltonian_expansion, trivialization_correction
from .flow import TrivializationMap, apply_T, apply_T_inv, hamiltonian, hamiltonian_residual
from .homotopy import Homotopy, build_homotopy, endpoint_mismatch, homotopy_curvature

__all__ = [
    "EXPANSION_DEGREE",
    "Homotopy",
    "TrivializationMap",
    "apply_T",
    "apply_T_inv",
    "build_homotopy",
    "endpoint_mismatch",
    "hamiltonian",
    "hamiltonian_expansion",
    "hamiltonian_residual",
    "homotopy_curvature",
    "trivialization_correction",
]
