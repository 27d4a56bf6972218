from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from functools import lru_cache

from sympy.polys.rings import PolyRing

from .polynomials import Poly, coefficient_ring, depends_on_t, t_variable
from .validation import (
    ChartValidationError,
    ConfigurationError,
    require_even_dimension,
    require_index,
    require_truncation,
)

log = logging.getLogger(__name__)

GammaIndex = tuple[int, int, int]


@lru_cache(maxsize=None)
def darboux_lower(dim: int) -> tuple[tuple[int, ...], ...]:
    """ω_ij with ω_{2a,2a+1} = 1 and ω_{2a+1,2a} = -1 (0-based pairs)."""
    rows = [[0] * dim for _ in range(dim)]
    for a in range(0, dim, 2):
        rows[a][a + 1] = 1
        rows[a + 1][a] = -1
    return tuple(tuple(row) for row in rows)


@lru_cache(maxsize=None)
def darboux_upper(dim: int) -> tuple[tuple[int, ...], ...]:
    """ω^ij, the matrix inverse of ω_ij, so ω^{mi} ω_{ij} = δ^m_j."""
    rows = [[0] * dim for _ in range(dim)]
    for a in range(0, dim, 2):
        rows[a][a + 1] = -1
        rows[a + 1][a] = 1
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True, slots=True, eq=False)
class Chart:
    """Darboux chart data: dimension, connection coefficients and truncations.

    ``gamma`` maps every index triple (0-based) with a nonzero coefficient to
    its polynomial; all permutations of a triple are present.
    """

    dim: int
    gamma: Mapping[GammaIndex, Poly]
    n_work: int
    h_order: int
    ring: PolyRing = field(repr=False)

    def __post_init__(self) -> None:
        require_even_dimension(self.dim)
        require_truncation(self.n_work, self.h_order)
        if self.ring != coefficient_ring(self.dim):
            raise ConfigurationError("Chart ring does not match the chart dimension")
        for (i, j, k), poly in self.gamma.items():
            for index in (i, j, k):
                require_index(index, self.dim, what="gamma index")
            if poly.ring != self.ring:
                raise ConfigurationError("Gamma coefficient lives in a foreign ring")
            for perm in set(itertools.permutations((i, j, k))):
                if self.gamma.get(perm) != poly:
                    raise ChartValidationError(
                        f"Gamma is not totally symmetric at {_one_based((i, j, k))}"
                        f" versus {_one_based(perm)}"
                    )

    @classmethod
    def create(
        cls,
        dim: int,
        gamma: Mapping[GammaIndex, Poly] | None = None,
        *,
        n_work: int = 6,
        h_order: int = 2,
    ) -> Chart:
        """Build a chart from a fully specified (already symmetric) Γ."""
        ring = coefficient_ring(require_even_dimension(dim))
        cleaned = {key: poly for key, poly in (gamma or {}).items() if poly}
        return cls(dim=dim, gamma=cleaned, n_work=n_work, h_order=h_order, ring=ring)

    @classmethod
    def from_entries(
        cls,
        dim: int,
        entries: Iterable[tuple[GammaIndex, Poly]],
        *,
        n_work: int = 6,
        h_order: int = 2,
    ) -> Chart:
        """Build a chart mirroring each entry to all permutations of its indices.

        Two entries naming permutations of the same triple must agree.
        """
        ring = coefficient_ring(require_even_dimension(dim))
        gamma: dict[GammaIndex, Poly] = {}
        origin: dict[GammaIndex, GammaIndex] = {}
        for index, poly in entries:
            if len(index) != 3:
                raise ChartValidationError(f"Gamma entry needs three indices, got {index}")
            for value in index:
                require_index(value, dim, what="gamma index")
            poly = ring(poly) if not hasattr(poly, "ring") else poly
            for perm in set(itertools.permutations(index)):
                if perm in gamma and gamma[perm] != poly:
                    raise ChartValidationError(
                        f"Conflicting gamma entries {_one_based(origin[perm])}"
                        f" and {_one_based(tuple(index))}"
                    )
                gamma[perm] = poly
                origin[perm] = tuple(index)
        return cls.create(dim, gamma, n_work=n_work, h_order=h_order)

    @property
    def omega_lower(self) -> tuple[tuple[int, ...], ...]:
        return darboux_lower(self.dim)

    @property
    def omega_upper(self) -> tuple[tuple[int, ...], ...]:
        return darboux_upper(self.dim)

    def gamma_at(self, i: int, j: int, k: int) -> Poly:
        return self.gamma.get((i, j, k), self.ring.zero)

    @property
    def is_flat(self) -> bool:
        return not self.gamma

    @property
    def depends_on_t(self) -> bool:
        return any(depends_on_t(poly) for poly in self.gamma.values())

    def flat(self) -> Chart:
        return replace(self, gamma={})

    def with_truncation(self, n_work: int | None = None, h_order: int | None = None) -> Chart:
        return replace(
            self,
            n_work=self.n_work if n_work is None else n_work,
            h_order=self.h_order if h_order is None else h_order,
        )

    def with_time_profile(self, power: int = 1) -> Chart:
        """Return the chart with Γ replaced by t^power Γ."""
        if power < 1:
            raise ConfigurationError(f"Homotopy power must be >= 1, got {power}")
        if self.depends_on_t:
            raise ConfigurationError("Gamma already depends on the homotopy variable")
        factor = t_variable(self.ring) ** power
        return replace(self, gamma={key: poly * factor for key, poly in self.gamma.items()})

    def accuracy_ok(self) -> bool:
        return self.n_work >= 2 * self.h_order + 2

    def warn_if_inaccurate(self) -> None:
        if not self.accuracy_ok():
            log.warning(
                "Working degree %s is below 2K+2 = %s; h-order %s results are not guaranteed",
                self.n_work,
                2 * self.h_order + 2,
                self.h_order,
            )


def _one_based(index: Iterable[int]) -> list[int]:
    return [value + 1 for value in index]


__all__ = ["Chart", "GammaIndex", "darboux_lower", "darboux_upper"]
