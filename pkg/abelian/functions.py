"""Formal functions ``Σ_k h^k f_k(x)`` truncated in h."""

from __future__ import annotations

from dataclasses import dataclass

from sympy.polys.rings import PolyRing

from weyl_core.forms import WeylForm
from weyl_core.polynomials import Poly, chart_dimension, diff_x
from weyl_core.validation import ConfigurationError


@dataclass(frozen=True, slots=True)
class StarFunction:
    """Element of C(x)[[h]]; ``coeffs[k]`` is the h^k coefficient.

    Trailing zero coefficients are trimmed, so equal series compare equal.
    """

    ring: PolyRing
    coeffs: tuple[Poly, ...] = ()

    def __post_init__(self) -> None:
        coeffs = tuple(self.ring(c) if not isinstance(c, Poly) else c for c in self.coeffs)
        for c in coeffs:
            if c.ring != self.ring:
                raise ConfigurationError("StarFunction coefficient lives in a foreign ring")
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, ring: PolyRing, *coeffs: Poly | int) -> StarFunction:
        return cls(ring, tuple(ring(c) for c in coeffs))

    @classmethod
    def zero(cls, ring: PolyRing) -> StarFunction:
        return cls(ring, ())

    @classmethod
    def one(cls, ring: PolyRing) -> StarFunction:
        return cls(ring, (ring.one,))

    @property
    def dim(self) -> int:
        return chart_dimension(self.ring)

    @property
    def order(self) -> int:
        """Highest stored h-power, -1 for zero."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Poly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero

    @property
    def classical(self) -> Poly:
        return self.coefficient(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, order: int) -> StarFunction:
        return StarFunction(self.ring, self.coeffs[: order + 1])

    def _check(self, other: StarFunction) -> None:
        if not isinstance(other, StarFunction):
            raise TypeError(f"Expected a StarFunction, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ConfigurationError("StarFunctions belong to different charts")

    def __add__(self, other: StarFunction) -> StarFunction:
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return StarFunction(
            self.ring,
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)),
        )

    def __neg__(self) -> StarFunction:
        return StarFunction(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: StarFunction) -> StarFunction:
        return self + (-other)

    def scale(self, factor) -> StarFunction:
        return StarFunction(self.ring, tuple(c * factor for c in self.coeffs))

    def shift_h(self, power: int) -> StarFunction:
        """Multiply by h^power; negative powers drop the lowest coefficients."""
        if power >= 0:
            return StarFunction(self.ring, (self.ring.zero,) * power + self.coeffs)
        return StarFunction(self.ring, self.coeffs[-power:])

    def map(self, fn) -> StarFunction:
        return StarFunction(self.ring, tuple(fn(c) for c in self.coeffs))

    def diff_x(self, i: int) -> StarFunction:
        return self.map(lambda c: diff_x(c, i))

    def pointwise(self, other: StarFunction, order: int) -> StarFunction:
        """Commutative product of the h-series, cut at ``order``."""
        self._check(other)
        coeffs = [self.ring.zero] * (order + 1)
        for a, ca in enumerate(self.coeffs[: order + 1]):
            for b, cb in enumerate(other.coeffs[: order + 1 - a]):
                coeffs[a + b] += ca * cb
        return StarFunction(self.ring, tuple(coeffs))

    def to_weyl(self, truncation: int) -> WeylForm:
        """The central section ``Σ h^k f_k`` kept through Fedosov degree ``truncation``."""
        zero_alpha = (0,) * self.dim
        return WeylForm.build(
            self.ring,
            (((k, zero_alpha, ()), c) for k, c in enumerate(self.coeffs)),
            truncation,
        )


__all__ = ["StarFunction"]
