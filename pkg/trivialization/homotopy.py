from __future__ import annotations

import logging
from dataclasses import dataclass

from abelian.connection import AbelianConnection, build_r, fedosov_curvature
from weyl_core.chart import Chart
from weyl_core.forms import WeylForm
from weyl_core.operators import trivial_connection_form
from weyl_core.validation import ConfigurationError

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class Homotopy:
    """Family of Abelian connections for Γ(t) = t^power Γ, t in [0, 1].

    ``connection_t`` is the Abelian connection of the time-profiled chart;
    its forms carry polynomial dependence on t.
    """

    chart: Chart
    endpoint: AbelianConnection
    connection_t: AbelianConnection
    power: int = 1

    @property
    def gamma_t(self) -> WeylForm:
        return self.connection_t.gamma_total

    @property
    def r_t(self) -> WeylForm:
        return self.connection_t.r

    @property
    def chart_t(self) -> Chart:
        return self.connection_t.chart

    def gamma_at(self, value) -> WeylForm:
        return self.gamma_t.at_t(value)

    def gamma_dot(self) -> WeylForm:
        return self.gamma_t.diff_t()


def build_homotopy(conn: AbelianConnection, power: int = 1) -> Homotopy:
    chart = conn.chart
    if chart.depends_on_t:
        raise ConfigurationError("The endpoint connection must not depend on t")
    connection_t = build_r(chart.with_time_profile(power))
    log.info("Homotopy built with profile t^%s", power)
    return Homotopy(chart=chart, endpoint=conn, connection_t=connection_t, power=power)


def endpoint_mismatch(homotopy: Homotopy) -> tuple[WeylForm, WeylForm]:
    """Differences γ(0) - ω_ij y^i dx^j and γ(1) - γ_D; both vanish."""
    chart = homotopy.chart
    start = homotopy.gamma_at(0) - trivial_connection_form(chart, chart.n_work)
    end = homotopy.gamma_at(1) - homotopy.endpoint.gamma_total
    return start, end


def homotopy_curvature(homotopy: Homotopy) -> WeylForm:
    """Ω(t) of the family; it equals -½ ω_ij dx^i ∧ dx^j for every t."""
    return fedosov_curvature(homotopy.connection_t)


__all__ = ["Homotopy", "build_homotopy", "endpoint_mismatch", "homotopy_curvature"]
