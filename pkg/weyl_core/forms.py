"""Truncated sections of the Weyl bundle tensored with forms.

A ``WeylForm`` is a finitely supported map

    (k, alpha, beta) -> coefficient polynomial in x (and t)

standing for the sum of ``h^k y^alpha dx^beta`` times the coefficient.
``alpha`` is an exponent vector of length n, ``beta`` a strictly increasing
tuple of dx indices. The Fedosov degree of a key is ``2k + |alpha|``.

``truncation`` is the Fedosov degree through which the value is exact. No
key above it is stored and equality is taken modulo higher degrees.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

from sympy.polys.rings import PolyRing

from .polynomials import Poly, antiderivative_t, at_t, chart_dimension, diff_t
from .validation import ConfigurationError, require_index

WeylKey = tuple[int, tuple[int, ...], tuple[int, ...]]


def fedosov_degree(key: WeylKey) -> int:
    return 2 * key[0] + sum(key[1])


def sort_dx(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort dx indices, returning the permutation sign (0 on a repeat)."""
    items = list(indices)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:], strict=False):
        if a == b:
            return 0, ()
    return sign, tuple(items)


def wedge_indices(
    left: tuple[int, ...], right: tuple[int, ...]
) -> tuple[int, tuple[int, ...]]:
    """dx^left ∧ dx^right for strictly increasing inputs."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    inversions = 0
    for a in left:
        for b in right:
            if a == b:
                return 0, ()
            if a > b:
                inversions += 1
    merged = tuple(sorted(left + right))
    return (-1 if inversions % 2 else 1), merged


def accumulate(target: dict[WeylKey, Poly], key: WeylKey, poly: Poly) -> None:
    current = target.get(key)
    target[key] = poly if current is None else current + poly


@dataclass(frozen=True, slots=True, eq=False)
class WeylForm:
    ring: PolyRing
    terms: Mapping[WeylKey, Poly]
    truncation: int

    # ----- construction -----
    @classmethod
    def build(
        cls,
        ring: PolyRing,
        terms: Mapping[WeylKey, Poly] | Iterable[tuple[WeylKey, Poly]],
        truncation: int,
    ) -> WeylForm:
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[WeylKey, Poly] = {}
        for key, poly in items:
            if fedosov_degree(key) <= truncation:
                accumulate(merged, key, poly)
        return cls.from_accumulated(ring, merged, truncation)

    @classmethod
    def from_accumulated(
        cls, ring: PolyRing, merged: dict[WeylKey, Poly], truncation: int
    ) -> WeylForm:
        cleaned = {
            key: poly
            for key, poly in merged.items()
            if poly and fedosov_degree(key) <= truncation
        }
        return cls(ring=ring, terms=cleaned, truncation=truncation)

    @classmethod
    def zero(cls, ring: PolyRing, truncation: int) -> WeylForm:
        return cls(ring=ring, terms={}, truncation=truncation)

    @classmethod
    def monomial(
        cls,
        ring: PolyRing,
        truncation: int,
        coeff: Poly | int | None = None,
        *,
        h: int = 0,
        y: Sequence[int] = (),
        dx: Sequence[int] = (),
    ) -> WeylForm:
        """``coeff * h^h * y^{y[0]} y^{y[1]} ... * dx^{dx[0]} ∧ dx^{dx[1]} ...``.

        ``y`` and ``dx`` list (0-based) indices; repeats in ``y`` are powers.
        """
        dim = chart_dimension(ring)
        alpha = [0] * dim
        for index in y:
            alpha[require_index(index, dim, what="fiber index")] += 1
        for index in dx:
            require_index(index, dim, what="form index")
        sign, beta = sort_dx(dx)
        poly = ring.one if coeff is None else ring(coeff)
        key = (h, tuple(alpha), beta)
        return cls.build(ring, [(key, poly * sign)], truncation)

    @classmethod
    def central(cls, ring: PolyRing, poly: Poly, truncation: int, *, h: int = 0) -> WeylForm:
        key = (h, (0,) * chart_dimension(ring), ())
        return cls.build(ring, [(key, poly)], truncation)

    # ----- inspection -----
    @property
    def dim(self) -> int:
        return chart_dimension(self.ring)

    def items(self) -> Iterator[tuple[WeylKey, Poly]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((fedosov_degree(key) for key in self.terms), default=-1)

    def min_degree(self) -> int | None:
        return min((fedosov_degree(key) for key in self.terms), default=None)

    def form_degrees(self) -> set[int]:
        return {len(key[2]) for key in self.terms}

    def is_central(self) -> bool:
        """True when no term carries a fiber variable."""
        return not any(sum(key[1]) for key in self.terms)

    def coefficient(self, h: int, alpha: Sequence[int], beta: Sequence[int] = ()) -> Poly:
        return self.terms.get((h, tuple(alpha), tuple(beta)), self.ring.zero)

    # ----- filters -----
    def _select(self, keep: Callable[[WeylKey], bool], truncation: int | None = None) -> WeylForm:
        bound = self.truncation if truncation is None else truncation
        return WeylForm(
            ring=self.ring,
            terms={key: poly for key, poly in self.terms.items() if keep(key)},
            truncation=bound,
        )

    def degree_part(self, m: int) -> WeylForm:
        return self._select(lambda key: fedosov_degree(key) == m)

    def by_degree(self) -> dict[int, WeylForm]:
        grouped: dict[int, dict[WeylKey, Poly]] = {}
        for key, poly in self.terms.items():
            grouped.setdefault(fedosov_degree(key), {})[key] = poly
        return {
            degree: WeylForm(ring=self.ring, terms=terms, truncation=self.truncation)
            for degree, terms in grouped.items()
        }

    def truncate(self, m: int) -> WeylForm:
        bound = min(m, self.truncation)
        return self._select(lambda key: fedosov_degree(key) <= bound, bound)

    def with_truncation(self, m: int) -> WeylForm:
        return self._select(lambda key: fedosov_degree(key) <= m, m)

    def form_part(self, q: int) -> WeylForm:
        return self._select(lambda key: len(key[2]) == q)

    def central_part(self) -> WeylForm:
        return self._select(lambda key: not sum(key[1]) and not key[2])

    def fiber_part(self) -> WeylForm:
        return self._select(lambda key: bool(sum(key[1])))

    # ----- linear structure -----
    def _check_compatible(self, other: WeylForm) -> None:
        if not isinstance(other, WeylForm):
            raise TypeError(f"Expected a WeylForm, got {type(other).__name__}")
        if self.ring != other.ring:
            raise ConfigurationError("WeylForms belong to different charts")

    def __add__(self, other: WeylForm) -> WeylForm:
        self._check_compatible(other)
        merged = dict(self.terms)
        for key, poly in other.terms.items():
            accumulate(merged, key, poly)
        return WeylForm.from_accumulated(
            self.ring, merged, min(self.truncation, other.truncation)
        )

    def __neg__(self) -> WeylForm:
        return WeylForm(
            ring=self.ring,
            terms={key: -poly for key, poly in self.terms.items()},
            truncation=self.truncation,
        )

    def __sub__(self, other: WeylForm) -> WeylForm:
        return self + (-other)

    def scale(self, factor) -> WeylForm:
        """Multiply every coefficient by a scalar, integer or polynomial."""
        return WeylForm.from_accumulated(
            self.ring,
            {key: poly * factor for key, poly in self.terms.items()},
            self.truncation,
        )

    def shift_h(self, power: int) -> WeylForm:
        """Multiply by h^power (power >= 0)."""
        return WeylForm.build(
            self.ring,
            (((key[0] + power, key[1], key[2]), poly) for key, poly in self.terms.items()),
            self.truncation,
        )

    def map_coefficients(self, fn: Callable[[Poly], Poly]) -> WeylForm:
        return WeylForm.from_accumulated(
            self.ring,
            {key: fn(poly) for key, poly in self.terms.items()},
            self.truncation,
        )

    def diff_t(self) -> WeylForm:
        return self.map_coefficients(diff_t)

    def antiderivative_t(self) -> WeylForm:
        return self.map_coefficients(antiderivative_t)

    def at_t(self, value) -> WeylForm:
        return self.map_coefficients(lambda poly: at_t(poly, value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylForm):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]


def sum_forms(forms: Iterable[WeylForm], ring: PolyRing, truncation: int) -> WeylForm:
    merged: dict[WeylKey, Poly] = {}
    bound = truncation
    for form in forms:
        if form.ring != ring:
            raise ConfigurationError("WeylForms belong to different charts")
        bound = min(bound, form.truncation)
        for key, poly in form.terms.items():
            accumulate(merged, key, poly)
    return WeylForm.from_accumulated(ring, merged, bound)


__all__ = [
    "WeylForm",
    "WeylKey",
    "accumulate",
    "fedosov_degree",
    "sort_dx",
    "sum_forms",
    "wedge_indices",
]
