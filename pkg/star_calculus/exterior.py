from __future__ import annotations

import itertools
import math
from collections.abc import Mapping

import sympy

from abelian.functions import StarFunction
from weyl_core.scalars import rational
from weyl_core.validation import ConfigurationError, require_index

from .frame import Frame, derive
from .tensors import StarForm, StarTensor, alt, as_tensor, wedge_star

Indices = tuple[int, ...]


def d_star(frame: Frame, form: StarForm) -> StarForm:
    """(d_* η)_J = Σ_r (-1)^r X_{j_r}(η_{J without j_r}) on increasing J."""
    k = form.rank
    components: dict[tuple[int, ...], StarFunction] = {}
    for key in itertools.combinations(range(frame.dim), k + 1):
        total = StarFunction.zero(frame.ring)
        for position, j in enumerate(key):
            rest = key[:position] + key[position + 1 :]
            value = form.components.get(rest)
            if value is None:
                continue
            term = derive(frame, j, value)
            total = total - term if position % 2 else total + term
        components[key] = total
    return StarForm(frame.ring, k + 1, components)


def d_star_components(frame: Frame, tensor: StarTensor) -> StarForm:
    """d_* on any component array: (k + 1) Alt(Y) with Y_{jI} = X_j(T_I).

    Arrays with the same antisymmetrization give the same result.
    """
    if isinstance(tensor, StarForm):
        tensor = as_tensor(tensor)
    k = tensor.rank
    lifted = {
        (j, *key): derive(frame, j, value)
        for key, value in tensor.components.items()
        for j in range(frame.dim)
    }
    result = alt(StarTensor(frame.ring, k + 1, lifted))
    return result.scale(rational(k + 1))


def coframe(frame: Frame, j: int) -> StarForm:
    """θ^j = d_*(ω^{jk} λ_k)."""
    require_index(j, frame.dim, what="frame index")
    potential = StarFunction.zero(frame.ring)
    for k, weight in enumerate(frame.chart.omega_upper[j]):
        if weight:
            potential = potential + frame.lambdas[k].scale(weight)
    return d_star(frame, StarForm.function(potential))


def classical_rank(n: int, k: int) -> int:
    """Number of basis forms of degree k, C(n, k)."""
    return math.comb(n, k) if 0 <= k <= n else 0


def coframe_basis(frame: Frame, k: int) -> dict[Indices, StarForm]:
    """θ^I = θ^{i1} ∧_* ... ∧_* θ^{ik} for every increasing I; k = 0 gives the unit."""
    if not 0 <= k <= frame.dim:
        raise ConfigurationError(f"Form degree {k} outside 0..{frame.dim}")
    generators = [coframe(frame, j) for j in range(frame.dim)]
    unit = StarForm.function(StarFunction.one(frame.ring))
    basis: dict[Indices, StarForm] = {}
    for key in itertools.combinations(range(frame.dim), k):
        product = unit
        for j in key:
            product = wedge_star(frame, product, generators[j])
        basis[key] = product
    return basis


def combine_coframe(
    frame: Frame,
    k: int,
    coefficients: Mapping[Indices, StarFunction],
    *,
    basis: Mapping[Indices, StarForm] | None = None,
) -> StarForm:
    """Σ_I a_I ∧_* θ^I over increasing I; ``basis`` reuses a coframe_basis result."""
    if basis is None:
        basis = coframe_basis(frame, k)
    total = StarForm(frame.ring, k, {})
    for key, value in coefficients.items():
        if key not in basis:
            raise ConfigurationError(f"{key} is not an increasing index tuple of length {k}")
        total = total + wedge_star(frame, StarForm.function(value), basis[key])
    return total


def basis_rank(
    frame: Frame, k: int, *, basis: Mapping[Indices, StarForm] | None = None
) -> int:
    """Rank of the classical parts of θ^I(X_J) over increasing I and J.

    At full rank C(n, k) no nonzero Σ a_I ∧_* θ^I vanishes: its lowest
    nonzero h-order would be a classical null vector of this matrix.
    """
    if basis is None:
        basis = coframe_basis(frame, k)
    keys = list(basis)
    matrix = sympy.Matrix(
        [[basis[row].component(col).classical.as_expr() for col in keys] for row in keys]
    )
    return matrix.rank()


__all__ = [
    "basis_rank",
    "classical_rank",
    "coframe",
    "coframe_basis",
    "combine_coframe",
    "d_star",
    "d_star_components",
]
