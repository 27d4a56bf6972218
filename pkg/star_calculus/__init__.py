"""Deformed differential calculus over the Fedosov function algebra."""

from .exterior import (
    basis_rank,
    classical_rank,
    coframe,
    coframe_basis,
    combine_coframe,
    d_star,
    d_star_components,
)
from .frame import (
    Frame,
    build_frame,
    derivation_correction,
    derive,
    derive_via_trivialization,
    lambda_expansion,
    lemma_residual,
)
from .tensors import (
    StarForm,
    StarTensor,
    alt,
    as_tensor,
    eval_on_frame,
    module_mul,
    tensor_star,
    theta,
    wedge_star,
)

__all__ = [
    "Frame",
    "StarForm",
    "StarTensor",
    "alt",
    "as_tensor",
    "basis_rank",
    "build_frame",
    "classical_rank",
    "coframe",
    "coframe_basis",
    "combine_coframe",
    "d_star",
    "d_star_components",
    "derivation_correction",
    "derive",
    "derive_via_trivialization",
    "eval_on_frame",
    "lambda_expansion",
    "lemma_residual",
    "module_mul",
    "tensor_star",
    "theta",
    "wedge_star",
]
