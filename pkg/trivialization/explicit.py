"""Closed-form low-degree terms of the Hamiltonian and of the trivialization."""

from __future__ import annotations

import itertools

from weyl_core.chart import Chart
from weyl_core.forms import WeylForm, sum_forms
from weyl_core.polynomials import Poly, diff_t
from weyl_core.tensors import (
    Tensor,
    as_scalar,
    contract,
    covariant_derivative_tensor,
    curvature_tensor,
    raise_index,
    symmetric_y_form,
)
from weyl_core.validation import ConfigurationError

from .homotopy import Homotopy

EXPANSION_DEGREE = 5


def _fully_raised(chart: Chart, tensor: Tensor, rank: int) -> Tensor:
    for slot in range(rank):
        tensor = raise_index(chart, tensor, slot)
    return tensor


def hamiltonian_expansion(homotopy: Homotopy) -> WeylForm:
    """H(t) through Fedosov degree 5 from tensors of Γ(t) and Γ̇(t).

    -1/6 Γ̇_ijk y^3 - 1/24 ∇_i Γ̇_jkl y^4 - 1/120 ∇_i ∇_j Γ̇_klm y^5
    - 1/80 R_ijpk Γ̇^p_lm y^5 + 1/32 h^2 R_ijkl Γ̇^{ijk} y^l,
    with ∇ and R taken for Γ(t) and Γ̇ treated as a covariant tensor.
    """
    chart_t = homotopy.chart_t
    bound = min(EXPANSION_DEGREE, chart_t.n_work)
    gamma_dot = {key: diff_t(poly) for key, poly in chart_t.gamma.items()}
    gamma_dot = {key: poly for key, poly in gamma_dot.items() if poly}
    nabla = covariant_derivative_tensor(chart_t, gamma_dot, 3)
    nabla2 = covariant_derivative_tensor(chart_t, nabla, 4)
    curvature = curvature_tensor(chart_t)
    mixed = contract(curvature, raise_index(chart_t, gamma_dot, 0), [(2, 0)])
    quantum = contract(curvature, _fully_raised(chart_t, gamma_dot, 3), [(0, 0), (1, 1), (2, 2)])

    def y_form(tensor, slots, factor, h=0):
        return symmetric_y_form(chart_t, tensor, y_slots=slots, factor=factor, h=h, truncation=bound)

    return sum_forms(
        [
            y_form(gamma_dot, 3, (-1, 6)),
            y_form(nabla, 4, (-1, 24)),
            y_form(nabla2, 5, (-1, 120)),
            y_form(mixed, 5, (-1, 80)),
            y_form(quantum, 1, (1, 32), h=2),
        ],
        chart_t.ring,
        bound,
    )


def _derivative(poly: Poly, indices) -> Poly:
    for i in indices:
        poly = poly.diff(i)
    return poly


def trivialization_correction(chart: Chart, f: Poly) -> Poly:
    """C(f), the h^2 coefficient of the central part of T⁻¹Q₀ f.

    C(f) = 1/48 ω^{ls} ∂_s f ∂_l Γ_ijk Γ^{ijk}
         + 1/16 ω^{ls} ∂_s ∂_k f Γ^{ijk} Γ_ijl
         + 1/24 ∂_i ∂_j ∂_k f Γ^{ijk}.
    """
    if chart.depends_on_t:
        raise ConfigurationError("The closed-form correction needs a t-free chart")
    if f.ring != chart.ring:
        raise ConfigurationError("Function does not belong to this chart")
    n = chart.dim
    upper = chart.omega_upper
    gamma = chart.gamma
    raised = _fully_raised(chart, dict(gamma), 3)
    zero = chart.ring.zero
    total = zero
    for l, s in itertools.product(range(n), repeat=2):
        weight = upper[l][s]
        if not weight:
            continue
        df = f.diff(s)
        if df:
            trace = sum(
                (gamma[key].diff(l) * raised[key] for key in gamma if key in raised), zero
            )
            total += df * trace * (as_scalar((1, 48)) * weight)
        for k in range(n):
            ddf = df.diff(k)
            if not ddf:
                continue
            trace = sum(
                (
                    raised.get((i, j, k), zero) * gamma.get((i, j, l), zero)
                    for i, j in itertools.product(range(n), repeat=2)
                ),
                zero,
            )
            total += ddf * trace * (as_scalar((1, 16)) * weight)
    for key, value in raised.items():
        total += _derivative(f, key) * value * as_scalar((1, 24))
    return total


__all__ = ["EXPANSION_DEGREE", "hamiltonian_expansion", "trivialization_correction"]
