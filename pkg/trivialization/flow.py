"""Hamiltonian flow along a homotopy and the trivialization it generates.

The flow da/dt + (i/h)[H, a] = 0 is integrated in the form

    a(t) = a(0) - ∫_0^t (i/h)[H(τ), a(τ)] dτ.

Since deg H >= 3, the degree-m part of the integrand only involves parts
of a below degree m, so one sweep in the degree determines a(t) exactly
as a polynomial in t.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from abelian.connection import apply_D, lift
from weyl_core.forms import WeylForm, sum_forms
from weyl_core.moyal import bracket_over_h
from weyl_core.operators import delta, delta_inv, exterior_d
from weyl_core.validation import ConfigurationError, DomainError

from .homotopy import Homotopy

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class TrivializationMap:
    homotopy: Homotopy
    H_t: WeylForm
    H_by_degree: dict[int, WeylForm] = field(repr=False)

    @property
    def n_work(self) -> int:
        return self.homotopy.chart.n_work


def hamiltonian(homotopy: Homotopy) -> TrivializationMap:
    """H(t) = -Q_t δ⁻¹ γ̇(t)."""
    gamma_dot = homotopy.gamma_dot()
    H = -lift(homotopy.connection_t, delta_inv(gamma_dot))
    log.info("Hamiltonian built: %s terms through degree %s", len(H.terms), H.truncation)
    return TrivializationMap(homotopy=homotopy, H_t=H, H_by_degree=H.by_degree())


def hamiltonian_residual(tmap: TrivializationMap) -> WeylForm:
    """The y-dependent part of D_t H - γ̇; it vanishes."""
    homotopy = tmap.homotopy
    value = apply_D(homotopy.connection_t, tmap.H_t) - homotopy.gamma_dot()
    return value.fiber_part()


def _flow(
    tmap: TrivializationMap,
    start: WeylForm,
    correction: Callable[[WeylForm], WeylForm],
) -> dict[int, WeylForm]:
    bound = min(start.truncation, tmap.n_work - 1)
    ring = start.ring
    parts: dict[int, WeylForm] = {}
    for m in range(bound + 1):
        flow = [
            bracket_over_h(H_part, parts[m + 2 - p])
            for p, H_part in tmap.H_by_degree.items()
            if m + 2 - p in parts
        ]
        integrand = sum_forms(
            (piece.degree_part(m).with_truncation(bound) for piece in flow), ring, bound
        )
        piece = start.degree_part(m).with_truncation(bound) + correction(integrand)
        if not piece.is_zero():
            parts[m] = piece
        log.debug("flow degree %s: %s terms", m, len(piece.terms))
    return parts


def _check_ring(tmap: TrivializationMap, a: WeylForm) -> None:
    if a.ring != tmap.homotopy.chart.ring:
        raise ConfigurationError("WeylForm does not belong to this trivialization's chart")


def apply_T_inv(tmap: TrivializationMap, a0: WeylForm) -> WeylForm:
    """T⁻¹: flat sections of d - δ to flat sections of D, a(0) ↦ a(1)."""
    _check_ring(tmap, a0)
    if not (exterior_d(a0) - delta(a0)).is_zero():
        raise DomainError("Input is not flat for the trivial connection d - δ")
    parts = _flow(tmap, a0, lambda integrand: -integrand.antiderivative_t())
    bound = min(a0.truncation, tmap.n_work - 1)
    return sum_forms(parts.values(), a0.ring, bound).at_t(1)


def apply_T(tmap: TrivializationMap, a1: WeylForm) -> WeylForm:
    """T: flat sections of D to flat sections of d - δ, a(1) ↦ a(0).

    Uses a(t) = a(1) + ∫_t^1 (i/h)[H, a] dτ.
    """
    _check_ring(tmap, a1)
    if not apply_D(tmap.homotopy.endpoint, a1).is_zero():
        raise DomainError("Input is not flat for the Abelian connection D")

    def backward(integrand: WeylForm) -> WeylForm:
        primitive = integrand.antiderivative_t()
        return primitive.at_t(1) - primitive

    parts = _flow(tmap, a1, backward)
    bound = min(a1.truncation, tmap.n_work - 1)
    return sum_forms(parts.values(), a1.ring, bound).at_t(0)


__all__ = [
    "TrivializationMap",
    "apply_T",
    "apply_T_inv",
    "hamiltonian",
    "hamiltonian_residual",
]
