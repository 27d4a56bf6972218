"""Fiberwise Moyal product on Weyl forms and the commutators built from it.

For Darboux pairs (u, v) = (y^{2p}, y^{2p+1}) the bidifferential operator
``ω^{ij} ∂_i ⊗ ∂_j`` splits as ``-∂_u⊗∂_v + ∂_v⊗∂_u``, so the exponential
series factorizes pair by pair. ``moyal_table`` caches, for a pair of
y-exponent vectors, every surviving term of the series as
``(m, output exponent, coefficient)`` with the factor ``(-i/2)^m`` already
folded in; ``h^m`` is attached by the caller.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from functools import lru_cache, reduce

from sympy.polys.domains import QQ, QQ_I

from .forms import WeylForm, WeylKey, accumulate, fedosov_degree, wedge_indices
from .polynomials import Poly
from .scalars import IMAG, Scalar
from .validation import ConfigurationError

MoyalEntry = tuple[int, tuple[int, ...], Scalar]

_MINUS_HALF_I = QQ_I(QQ.zero, QQ(-1, 2))


@lru_cache(maxsize=None)
def _half_i_power(m: int) -> Scalar:
    value = QQ_I.one
    for _ in range(m):
        value = value * _MINUS_HALF_I
    return value


def _falling(n: int, k: int) -> int:
    return math.perm(n, k) if k <= n else 0


@lru_cache(maxsize=4096)
def _pair_table(a1: int, a2: int, b1: int, b2: int) -> tuple[tuple[int, int, int, object], ...]:
    """Series for u^a1 v^a2 ∘ u^b1 v^b2 as (m, u-exp, v-exp, rational)."""
    entries = []
    for r in range(min(a1, b2) + 1):
        for s in range(min(a2, b1) + 1):
            weight = (
                _falling(a1, r) * _falling(a2, s) * _falling(b2, r) * _falling(b1, s)
            )
            if not weight:
                continue
            sign = -1 if r % 2 else 1
            coeff = QQ(sign * weight, math.factorial(r) * math.factorial(s))
            entries.append((r + s, a1 + b1 - r - s, a2 + b2 - r - s, coeff))
    return tuple(entries)


@lru_cache(maxsize=65536)
def moyal_table(alpha: tuple[int, ...], beta: tuple[int, ...]) -> tuple[MoyalEntry, ...]:
    """All terms of ``y^alpha ∘ y^beta`` as ``(m, gamma, c)``: c h^m y^gamma."""
    if len(alpha) != len(beta) or len(alpha) % 2:
        raise ConfigurationError("Moyal exponents must share an even length")
    pair_tables = [
        _pair_table(alpha[p], alpha[p + 1], beta[p], beta[p + 1])
        for p in range(0, len(alpha), 2)
    ]

    def combine(partial, table):
        return [
            (m + m_pair, exps + (u, v), coeff * c_pair)
            for (m, exps, coeff), (m_pair, u, v, c_pair) in itertools.product(partial, table)
        ]

    merged = reduce(combine, pair_tables, [(0, (), QQ.one)])
    return tuple(
        (m, exps, QQ_I(coeff, QQ.zero) * _half_i_power(m)) for m, exps, coeff in merged
    )


def _moyal_sum(
    a: WeylForm,
    b: WeylForm,
    *,
    truncation: int,
    keep: Callable[[int], bool],
    h_shift: int,
    factor: Scalar,
) -> WeylForm:
    if a.ring != b.ring:
        raise ConfigurationError("WeylForms belong to different charts")
    merged: dict[WeylKey, Poly] = {}
    for (ka, alpha, beta_a), pa in a.terms.items():
        deg_a = fedosov_degree((ka, alpha, beta_a))
        for (kb, beta, beta_b), pb in b.terms.items():
            if deg_a + fedosov_degree((kb, beta, beta_b)) - 2 * h_shift > truncation:
                continue
            sign, dx = wedge_indices(beta_a, beta_b)
            if not sign:
                continue
            product = None
            for m, gamma, coeff in moyal_table(alpha, beta):
                if not keep(m):
                    continue
                if product is None:
                    product = pa * pb
                    if sign < 0:
                        product = -product
                accumulate(merged, (ka + kb + m - h_shift, gamma, dx), product * (coeff * factor))
    return WeylForm.from_accumulated(a.ring, merged, truncation)


def fiberwise_product(a: WeylForm, b: WeylForm) -> WeylForm:
    """``a ∘ b`` with dx parts combined by the wedge product."""
    return _moyal_sum(
        a,
        b,
        truncation=min(a.truncation, b.truncation),
        keep=lambda m: True,
        h_shift=0,
        factor=QQ_I.one,
    )


def graded_commutator(a: WeylForm, b: WeylForm) -> WeylForm:
    """``a∘b - (-1)^{rs} b∘a``, applied per form-degree component."""
    return _moyal_sum(
        a,
        b,
        truncation=min(a.truncation, b.truncation),
        keep=lambda m: m % 2 == 1,
        h_shift=0,
        factor=QQ_I(2, 0),
    )


def _fiber_floor(a: WeylForm) -> int:
    degrees = [fedosov_degree(key) for key in a.terms if sum(key[1])]
    return min(degrees, default=a.truncation + 1)


def bracket_truncation(a: WeylForm, b: WeylForm) -> int:
    """Degree through which ``(i/h)[a, b]`` is determined by a and b."""
    return min(
        a.truncation,
        b.truncation,
        a.truncation + _fiber_floor(b) - 2,
        b.truncation + _fiber_floor(a) - 2,
    )


def bracket_over_h(a: WeylForm, b: WeylForm) -> WeylForm:
    """``(i/h)[a, b]`` evaluated from the odd orders, never forming h^{-1}."""
    return _moyal_sum(
        a,
        b,
        truncation=bracket_truncation(a, b),
        keep=lambda m: m % 2 == 1,
        h_shift=1,
        factor=IMAG * QQ_I(2, 0),
    )


def moyal_square_over_h(a: WeylForm) -> WeylForm:
    """``(i/h) a∘a`` for an odd form a, as half of ``(i/h)[a, a]``."""
    return bracket_over_h(a, a).scale(QQ_I(QQ(1, 2), QQ.zero))


__all__ = [
    "MoyalEntry",
    "bracket_over_h",
    "bracket_truncation",
    "fiberwise_product",
    "graded_commutator",
    "moyal_square_over_h",
    "moyal_table",
]
