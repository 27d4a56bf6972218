"""The Abelian connection D = -δ + ∂ + (i/h)[r, ·] and its flat sections.

``r`` is built degree by degree from

    r = δ⁻¹R + δ⁻¹(∂r + (i/h) r∘r),

whose degree-m part only involves parts of r of lower degree, so a single
sweep from degree 3 up to the working degree reaches the fixed point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from weyl_core.chart import Chart
from weyl_core.forms import WeylForm, sum_forms
from weyl_core.moyal import bracket_over_h, moyal_square_over_h
from weyl_core.operators import (
    connection_form,
    covariant_derivative,
    curvature_form,
    delta_inv,
    exterior_d,
    trivial_connection_form,
)
from weyl_core.validation import (
    ConfigurationError,
    DomainError,
    SolvabilityError,
    require_truncation,
)

from .functions import StarFunction

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class AbelianConnection:
    """An Abelian connection on one chart.

    ``r`` is the normalized 1-form correction, ``gamma_total`` the full
    connection form ω_ij y^i dx^j + ½Γ_ijk y^i y^j dx^k + r and
    ``r_by_degree`` the homogeneous pieces of r. Instances hash by identity.
    """

    chart: Chart
    r: WeylForm
    gamma_total: WeylForm
    r_by_degree: dict[int, WeylForm] = field(repr=False)

    @property
    def n_work(self) -> int:
        return self.chart.n_work

    @property
    def ring(self):
        return self.chart.ring


def _r_source(chart: Chart, parts: dict[int, WeylForm], degree: int, curvature: WeylForm) -> WeylForm:
    """Degree ``degree`` part of R + ∂r + (i/h) r∘r from the known pieces."""
    bound = chart.n_work
    pieces = []
    if degree == 2:
        pieces.append(curvature.degree_part(2))
    previous = parts.get(degree)
    if previous is not None:
        pieces.append(covariant_derivative(chart, previous))
    # p + q = degree + 2 with p, q >= 3; off-diagonal pairs counted once.
    for p in range(3, degree + 2):
        q = degree + 2 - p
        if q < p or p not in parts or q not in parts:
            continue
        if p == q:
            pieces.append(moyal_square_over_h(parts[p]))
        else:
            pieces.append(bracket_over_h(parts[p], parts[q]))
    return sum_forms(pieces, chart.ring, bound)


def build_r(chart: Chart) -> AbelianConnection:
    """Solve the r recursion through the chart's working degree."""
    require_truncation(chart.n_work, chart.h_order)
    bound = chart.n_work
    curvature = curvature_form(chart, bound)
    parts: dict[int, WeylForm] = {}
    for m in range(3, bound + 1):
        source = _r_source(chart, parts, m - 1, curvature)
        piece = delta_inv(source).degree_part(m).with_truncation(bound)
        log.debug("r degree %s: %s terms", m, len(piece.terms))
        if not piece.is_zero():
            parts[m] = piece
    r = sum_forms(parts.values(), chart.ring, bound)
    gamma_total = trivial_connection_form(chart, bound) + connection_form(chart, bound) + r
    log.info(
        "Abelian connection built: dim=%s n_work=%s r terms=%s",
        chart.dim,
        bound,
        len(r.terms),
    )
    return AbelianConnection(chart=chart, r=r, gamma_total=gamma_total, r_by_degree=parts)


def fixed_point_map(chart: Chart, r: WeylForm) -> WeylForm:
    """One sweep r ↦ δ⁻¹R + δ⁻¹(∂r + (i/h) r∘r), cut at the working degree."""
    bound = chart.n_work
    if r.ring != chart.ring:
        raise ConfigurationError("r does not belong to this chart")
    r = r.with_truncation(bound)
    source = curvature_form(chart, bound) + covariant_derivative(chart, r)
    if not r.is_zero():
        source = source + moyal_square_over_h(r)
    return delta_inv(source).truncate(bound)


def fixed_point_residual(conn: AbelianConnection) -> WeylForm:
    return fixed_point_map(conn.chart, conn.r) - conn.r


def apply_D(conn: AbelianConnection, a: WeylForm) -> WeylForm:
    """Da = da + (i/h)[γ, a]; exact through one degree below ``a``."""
    if a.ring != conn.ring:
        raise ConfigurationError("WeylForm does not belong to this connection's chart")
    bound = min(a.truncation, conn.n_work) - 1
    value = exterior_d(a) + bracket_over_h(conn.gamma_total, a)
    return value.truncate(bound)


def lift(conn: AbelianConnection, a: WeylForm) -> WeylForm:
    """Solve b = a + δ⁻¹(D + δ)b degree by degree.

    (D + δ)b = ∂b + (i/h)[r, b] keeps the degree of ∂b and lowers
    [r_p, b_q] to p + q - 2, so b_m only needs b below degree m.
    """
    if a.ring != conn.ring:
        raise ConfigurationError("WeylForm does not belong to this connection's chart")
    chart = conn.chart
    bound = min(a.truncation, conn.n_work)
    parts: dict[int, WeylForm] = {}
    for m in range(bound + 1):
        pieces = [a.degree_part(m).with_truncation(bound)]
        previous = parts.get(m - 1)
        if previous is not None:
            pieces.append(delta_inv(covariant_derivative(chart, previous)))
        for p, r_part in conn.r_by_degree.items():
            q = m + 1 - p
            if q in parts:
                pieces.append(delta_inv(bracket_over_h(r_part, parts[q])))
        piece = sum_forms(
            (part.degree_part(m).with_truncation(bound) for part in pieces),
            chart.ring,
            bound,
        )
        if not piece.is_zero():
            parts[m] = piece
        log.debug("lift degree %s: %s terms", m, len(piece.terms))
    return sum_forms(parts.values(), chart.ring, bound)


@lru_cache(maxsize=1024)
def _lift_function(conn: AbelianConnection, f: StarFunction) -> WeylForm:
    return lift(conn, f.to_weyl(conn.n_work))


def quantize_Q(conn: AbelianConnection, f: StarFunction) -> WeylForm:
    """The flat section with central part f."""
    if f.ring != conn.ring:
        raise ConfigurationError("StarFunction does not belong to this connection's chart")
    return _lift_function(conn, f)


def project_center(a: WeylForm) -> StarFunction:
    """Q⁻¹ on flat sections: the y-free, dx-free part."""
    if any(key[2] for key in a.terms):
        raise DomainError("Only 0-forms have a central part in the function algebra")
    central = a.central_part()
    size = max((key[0] for key in central.terms), default=-1) + 1
    coeffs = [a.ring.zero] * size
    for (k, _, _), poly in central.terms.items():
        coeffs[k] = poly
    return StarFunction(a.ring, tuple(coeffs))


def solve_D(conn: AbelianConnection, b: WeylForm) -> WeylForm:
    """Return a = -Q δ⁻¹ b, which solves Da = b whenever Db = 0."""
    if any(not key[2] for key in b.terms):
        raise DomainError("solve_D needs a form of positive degree")
    obstruction = apply_D(conn, b)
    if not obstruction.is_zero():
        raise SolvabilityError(
            f"Db does not vanish ({len(obstruction.terms)} terms through degree"
            f" {obstruction.truncation})"
        )
    return -lift(conn, delta_inv(b))


def fedosov_curvature(conn: AbelianConnection) -> WeylForm:
    """Ω = R + ∂γ' + (i/h) γ'∘γ' with γ' = ω_ij y^i dx^j + r."""
    chart = conn.chart
    bound = chart.n_work
    gamma = trivial_connection_form(chart, bound) + conn.r
    omega = (
        curvature_form(chart, bound)
        + covariant_derivative(chart, gamma)
        + moyal_square_over_h(gamma)
    )
    return omega.truncate(bound - 1)


def central_curvature(chart: Chart, truncation: int) -> WeylForm:
    """-½ ω_ij dx^i ∧ dx^j."""
    pieces = [
        WeylForm.monomial(chart.ring, truncation, -1, dx=(a, a + 1))
        for a in range(0, chart.dim, 2)
    ]
    return sum_forms(pieces, chart.ring, truncation)


__all__ = [
    "AbelianConnection",
    "apply_D",
    "build_r",
    "central_curvature",
    "fedosov_curvature",
    "fixed_point_map",
    "fixed_point_residual",
    "lift",
    "project_center",
    "quantize_Q",
    "solve_D",
]
