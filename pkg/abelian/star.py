"""The Fedosov star product on flat sections and a base-variable Moyal reference."""

from __future__ import annotations

import itertools
import logging
import math

from sympy.polys.domains import QQ, QQ_I

from weyl_core.chart import Chart
from weyl_core.moyal import fiberwise_product
from weyl_core.validation import ConfigurationError

from .connection import AbelianConnection, project_center, quantize_Q
from .functions import StarFunction

log = logging.getLogger(__name__)


def _resolve_order(conn: AbelianConnection, order: int | None) -> int:
    resolved = conn.chart.h_order if order is None else order
    if resolved < 0:
        raise ConfigurationError(f"h-order must be non-negative, got {resolved}")
    if 2 * resolved > conn.n_work:
        raise ConfigurationError(
            f"h-order {resolved} needs a working degree of at least {2 * resolved},"
            f" got {conn.n_work}"
        )
    return resolved


def star_product(
    conn: AbelianConnection,
    f: StarFunction,
    g: StarFunction,
    order: int | None = None,
) -> StarFunction:
    """f * g = Q⁻¹(Qf ∘ Qg), kept through h^order (default: the chart's K)."""
    resolved = _resolve_order(conn, order)
    product = fiberwise_product(quantize_Q(conn, f), quantize_Q(conn, g))
    result = project_center(product).truncate(resolved)
    log.debug("star product through h^%s: orders %s x %s", resolved, f.order, g.order)
    return result


def star_commutator(
    conn: AbelianConnection,
    f: StarFunction,
    g: StarFunction,
    order: int | None = None,
) -> StarFunction:
    """[f *, g] = f*g - g*f."""
    return star_product(conn, f, g, order) - star_product(conn, g, f, order)


def moyal_star_product(chart: Chart, f: StarFunction, g: StarFunction, order: int) -> StarFunction:
    """Moyal product in the base variables, by explicit index loops.

    f * g = Σ_m (-ih/2)^m / m! ω^{i1 j1}...ω^{im jm} ∂_{i1..im} f ∂_{j1..jm} g.
    Only valid for a flat chart; used as an independent reference.
    """
    upper = chart.omega_upper
    n = chart.dim
    ring = chart.ring
    coeffs = [ring.zero] * (order + 1)
    minus_half_i = QQ_I(QQ.zero, QQ(-1, 2))
    for m in range(order + 1):
        weight = QQ_I(QQ(1, math.factorial(m)), QQ.zero)
        for _ in range(m):
            weight = weight * minus_half_i
        for left in itertools.product(range(n), repeat=m):
            for right in itertools.product(range(n), repeat=m):
                sign = 1
                for i, j in zip(left, right, strict=True):
                    sign *= upper[i][j]
                    if not sign:
                        break
                if not sign:
                    continue
                for a, fa in enumerate(f.coeffs):
                    for b, gb in enumerate(g.coeffs):
                        if a + b + m > order:
                            continue
                        df, dg = fa, gb
                        for i in left:
                            df = df.diff(i)
                        for j in right:
                            dg = dg.diff(j)
                        coeffs[a + b + m] += df * dg * (weight * sign)
    return StarFunction(ring, tuple(coeffs))


__all__ = ["moyal_star_product", "star_commutator", "star_product"]
