"""Frame elements λ_i and the inner derivations X_i = (i/h)[λ_i *, ·]."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from abelian.connection import AbelianConnection, build_r, project_center, quantize_Q
from abelian.functions import StarFunction
from abelian.star import star_commutator, star_product
from trivialization.explicit import trivialization_correction
from trivialization.flow import TrivializationMap, apply_T, apply_T_inv
from weyl_core.chart import Chart
from weyl_core.operators import diff_y
from weyl_core.polynomials import Poly, x_variable
from weyl_core.scalars import IMAG, rational
from weyl_core.tensors import raise_index
from weyl_core.validation import ConfigurationError, ConsistencyError, require_index

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class Frame:
    chart: Chart
    conn: AbelianConnection
    flat_conn: AbelianConnection
    triv: TrivializationMap
    lambdas: tuple[StarFunction, ...]

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def h_order(self) -> int:
        return self.chart.h_order

    @property
    def ring(self):
        return self.chart.ring

    def star(self, f: StarFunction, g: StarFunction) -> StarFunction:
        return star_product(self.conn, f, g, self.h_order)


def _inner_derivation(frame: Frame, lam: StarFunction, f: StarFunction) -> StarFunction:
    """(i/h)[λ *, f] through h^K; the commutator is taken one order higher."""
    order = frame.h_order
    commutator = star_commutator(frame.conn, lam, f, order + 1)
    return commutator.shift_h(-1).scale(IMAG).truncate(order)


def lemma_residual(frame: Frame, i: int, j: int) -> StarFunction:
    """(i/h)[λ_i *, λ_j] + ω_ij, which vanishes."""
    value = _inner_derivation(frame, frame.lambdas[i], frame.lambdas[j])
    omega = frame.chart.omega_lower[i][j]
    return value + StarFunction.of(frame.ring, omega)


def build_frame(
    conn: AbelianConnection,
    triv: TrivializationMap,
    *,
    check: bool = True,
) -> Frame:
    """λ_i = ω_ij Q⁻¹ T⁻¹ Q₀ x^j through h^K."""
    chart = conn.chart
    order = chart.h_order
    if chart.n_work < 2 * order + 2:
        raise ConfigurationError(
            f"Frame through h^{order} needs a working degree of at least"
            f" {2 * order + 2}, got {chart.n_work}"
        )
    if triv.homotopy.endpoint is not conn:
        raise ConfigurationError("Trivialization was built for another connection")
    flat_conn = build_r(chart.flat())
    coordinates = []
    for j in range(chart.dim):
        seed = quantize_Q(flat_conn, StarFunction.of(chart.ring, x_variable(chart.ring, j)))
        coordinates.append(project_center(apply_T_inv(triv, seed)).truncate(order))
    lambdas = []
    for i, row in enumerate(chart.omega_lower):
        lam = StarFunction.zero(chart.ring)
        for j, weight in enumerate(row):
            if weight:
                lam = lam + coordinates[j].scale(weight)
        lambdas.append(lam)
        log.debug("lambda_%s has %s h-orders", i + 1, lam.order + 1)
    frame = Frame(
        chart=chart, conn=conn, flat_conn=flat_conn, triv=triv, lambdas=tuple(lambdas)
    )
    if check:
        for i in range(chart.dim):
            for j in range(i + 1, chart.dim):
                if not lemma_residual(frame, i, j).is_zero():
                    raise ConsistencyError(
                        f"Frame elements {i + 1} and {j + 1} violate the commutation relation"
                    )
    log.info("Frame built: dim=%s h_order=%s", chart.dim, order)
    return frame


def derive(frame: Frame, i: int, f: StarFunction) -> StarFunction:
    """X_i(f) = (i/h)[λ_i *, f]."""
    require_index(i, frame.dim, what="frame index")
    return _inner_derivation(frame, frame.lambdas[i], f)


def derive_via_trivialization(frame: Frame, i: int, f: StarFunction) -> StarFunction:
    """X_i(f) = Q⁻¹ T⁻¹ ∂/∂y^i (T Q f)."""
    require_index(i, frame.dim, what="frame index")
    trivial = apply_T(frame.triv, quantize_Q(frame.conn, f))
    return project_center(apply_T_inv(frame.triv, diff_y(trivial, i))).truncate(frame.h_order)


def lambda_expansion(chart: Chart) -> tuple[Poly, ...]:
    """h^2 coefficients -(1/48) ∂_i Γ_jkl Γ^{jkl} of the frame elements."""
    raised = dict(chart.gamma)
    for slot in range(3):
        raised = raise_index(chart, raised, slot)
    zero = chart.ring.zero
    return tuple(
        sum(
            (poly.diff(i) * raised[key] for key, poly in chart.gamma.items() if key in raised),
            zero,
        )
        * rational(-1, 48)
        for i in range(chart.dim)
    )


def derivation_correction(chart: Chart, f: Poly, i: int) -> Poly:
    """h^2 coefficient of X_i(f) for a classical f: -(∂_i C(f) - C(∂_i f))."""
    return -(
        trivialization_correction(chart, f).diff(i)
        - trivialization_correction(chart, f.diff(i))
    )


__all__ = [
    "Frame",
    "build_frame",
    "derivation_correction",
    "derive",
    "derive_via_trivialization",
    "lambda_expansion",
    "lemma_residual",
]
