"""Linear operators on Weyl forms: δ, δ⁻¹, ∂/∂y, d, the connection ∂ and R."""

from __future__ import annotations

from sympy.polys.domains import QQ, QQ_I

from .chart import Chart
from .forms import WeylForm, WeylKey, accumulate, wedge_indices
from .moyal import bracket_over_h
from .polynomials import Poly, chart_dimension
from .tensors import curvature_tensor, symmetric_y_form
from .validation import ConfigurationError, require_index


def delta(a: WeylForm) -> WeylForm:
    """δa = dx^k ∧ ∂a/∂y^k; exact through one degree less than ``a``."""
    merged: dict[WeylKey, Poly] = {}
    for (k, alpha, beta), poly in a.terms.items():
        for i, power in enumerate(alpha):
            if not power:
                continue
            sign, dx = wedge_indices((i,), beta)
            if not sign:
                continue
            lowered = alpha[:i] + (power - 1,) + alpha[i + 1 :]
            accumulate(merged, (k, lowered, dx), poly * (sign * power))
    return WeylForm.from_accumulated(a.ring, merged, a.truncation - 1)


def delta_inv(a: WeylForm) -> WeylForm:
    """δ⁻¹ on a term with p fiber and q form factors: y^s ι(∂_s) / (p + q)."""
    merged: dict[WeylKey, Poly] = {}
    for (k, alpha, beta), poly in a.terms.items():
        if not beta:
            continue
        weight = QQ_I(QQ(1, sum(alpha) + len(beta)), QQ.zero)
        for position, s in enumerate(beta):
            contracted = beta[:position] + beta[position + 1 :]
            raised = alpha[:s] + (alpha[s] + 1,) + alpha[s + 1 :]
            sign = -1 if position % 2 else 1
            accumulate(merged, (k, raised, contracted), poly * (weight * sign))
    return WeylForm.from_accumulated(a.ring, merged, a.truncation + 1)


def diff_y(a: WeylForm, i: int) -> WeylForm:
    require_index(i, a.dim, what="fiber index")
    merged: dict[WeylKey, Poly] = {}
    for (k, alpha, beta), poly in a.terms.items():
        power = alpha[i]
        if power:
            lowered = alpha[:i] + (power - 1,) + alpha[i + 1 :]
            accumulate(merged, (k, lowered, beta), poly * power)
    return WeylForm.from_accumulated(a.ring, merged, a.truncation - 1)


def exterior_d(a: WeylForm) -> WeylForm:
    """de Rham differential in x with dx^i placed on the left."""
    merged: dict[WeylKey, Poly] = {}
    for (k, alpha, beta), poly in a.terms.items():
        for i in range(chart_dimension(a.ring)):
            sign, dx = wedge_indices((i,), beta)
            if not sign:
                continue
            derivative = poly.diff(i)
            if derivative:
                accumulate(merged, (k, alpha, dx), derivative * sign)
    return WeylForm.from_accumulated(a.ring, merged, a.truncation)


def trivial_connection_form(chart: Chart, truncation: int | None = None) -> WeylForm:
    """ω_ij y^i dx^j, whose bracket gives -δ."""
    bound = chart.n_work if truncation is None else truncation
    tensor = {
        (i, j): chart.ring(weight)
        for i, row in enumerate(chart.omega_lower)
        for j, weight in enumerate(row)
        if weight
    }
    return symmetric_y_form(chart, tensor, y_slots=1, truncation=bound)


def connection_form(chart: Chart, truncation: int | None = None) -> WeylForm:
    """½ Γ_ijk y^i y^j dx^k."""
    bound = max(2, chart.n_work if truncation is None else truncation)
    return symmetric_y_form(chart, chart.gamma, y_slots=2, factor=(1, 2), truncation=bound)


def _check_chart(chart: Chart, a: WeylForm) -> None:
    if a.ring != chart.ring:
        raise ConfigurationError("WeylForm does not belong to this chart")


def covariant_derivative(chart: Chart, a: WeylForm) -> WeylForm:
    """∂a = da + (i/h)[½Γ_ijk y^i y^j dx^k, a]."""
    _check_chart(chart, a)
    if chart.is_flat:
        return exterior_d(a)
    gamma = connection_form(chart, a.truncation + 2)
    return exterior_d(a) + bracket_over_h(gamma, a)


def curvature_form(chart: Chart, truncation: int | None = None) -> WeylForm:
    """R = ¼ R_ijkl y^i y^j dx^k ∧ dx^l."""
    bound = max(2, chart.n_work if truncation is None else truncation)
    return symmetric_y_form(
        chart, curvature_tensor(chart), y_slots=2, factor=(1, 4), truncation=bound
    )


def degree_filter(a: WeylForm, m: int) -> WeylForm:
    """P_m: the part of Fedosov degree exactly m."""
    if m < 0 or m > a.truncation:
        raise ConfigurationError(f"Degree {m} outside 0..{a.truncation}")
    return a.degree_part(m)


__all__ = [
    "connection_form",
    "covariant_derivative",
    "curvature_form",
    "degree_filter",
    "delta",
    "delta_inv",
    "diff_y",
    "exterior_d",
    "trivial_connection_form",
]
