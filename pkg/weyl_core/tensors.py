"""Coordinate tensors over a chart.

Tensors are sparse dicts from 0-based index tuples to coefficient
polynomials; missing entries are zero.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence

from sympy.polys.domains import QQ, QQ_I

from .chart import Chart
from .forms import WeylForm, WeylKey, accumulate, sort_dx
from .polynomials import Poly
from .scalars import Scalar

Tensor = dict[tuple[int, ...], Poly]


def _put(target: Tensor, index: tuple[int, ...], poly: Poly) -> None:
    total = target[index] + poly if index in target else poly
    if total:
        target[index] = total
    else:
        target.pop(index, None)


def as_scalar(factor) -> Scalar:
    """Accept an int, a (numerator, denominator) pair or a scalar."""
    if isinstance(factor, tuple):
        return QQ_I(QQ(*factor), QQ.zero)
    if isinstance(factor, int):
        return QQ_I(factor, 0)
    return factor


def raise_index(chart: Chart, tensor: Mapping[tuple[int, ...], Poly], slot: int) -> Tensor:
    """a^i = ω^{ij} a_j applied to one slot."""
    upper = chart.omega_upper
    raised: Tensor = {}
    for index, poly in tensor.items():
        j = index[slot]
        for i in range(chart.dim):
            weight = upper[i][j]
            if weight:
                _put(raised, index[:slot] + (i,) + index[slot + 1 :], poly * weight)
    return raised


def lower_index(chart: Chart, tensor: Mapping[tuple[int, ...], Poly], slot: int) -> Tensor:
    """a_i = ω_{ij} a^j applied to one slot."""
    lower = chart.omega_lower
    lowered: Tensor = {}
    for index, poly in tensor.items():
        j = index[slot]
        for i in range(chart.dim):
            weight = lower[i][j]
            if weight:
                _put(lowered, index[:slot] + (i,) + index[slot + 1 :], poly * weight)
    return lowered


def gamma_upper(chart: Chart) -> Tensor:
    """Γ^i_{jk} = ω^{im} Γ_{mjk}."""
    return raise_index(chart, chart.gamma, 0)


def curvature_tensor(chart: Chart) -> Tensor:
    """Fully lowered R_ijkl of the symplectic connection.

    R^i_{jkl} = ∂_k Γ^i_{lj} - ∂_l Γ^i_{kj} + Γ^i_{km} Γ^m_{lj} - Γ^i_{lm} Γ^m_{kj}
    and R_ijkl = ω_im R^m_{jkl}; it is symmetric in (i, j) and skew in (k, l).
    """
    n = chart.dim
    up = gamma_upper(chart)
    zero = chart.ring.zero

    def g(i: int, j: int, k: int) -> Poly:
        return up.get((i, j, k), zero)

    mixed: Tensor = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if k >= l:
            continue
        value = g(i, l, j).diff(k) - g(i, k, j).diff(l)
        for m in range(n):
            value += g(i, k, m) * g(m, l, j) - g(i, l, m) * g(m, k, j)
        if value:
            mixed[(i, j, k, l)] = value
            mixed[(i, j, l, k)] = -value
    return lower_index(chart, mixed, 0)


def covariant_derivative_tensor(chart: Chart, tensor: Mapping[tuple[int, ...], Poly], rank: int) -> Tensor:
    """∇_i T_{j...} = ∂_i T_{j...} - Σ_s Γ^q_{i j_s} T_{...q...}; new index first.

    Γ is taken from ``chart`` as is, so a time-profiled chart gives ∇ at time t.
    """
    n = chart.dim
    up = gamma_upper(chart)
    zero = chart.ring.zero
    result: Tensor = {}
    for index in itertools.product(range(n), repeat=rank):
        base = tensor.get(index, zero)
        for i in range(n):
            value = base.diff(i)
            for slot, j in enumerate(index):
                for q in range(n):
                    conn = up.get((q, i, j))
                    if conn is None:
                        continue
                    other = tensor.get(index[:slot] + (q,) + index[slot + 1 :])
                    if other is not None:
                        value -= conn * other
            if value:
                result[(i, *index)] = value
    return result


def symmetric_y_form(
    chart: Chart,
    tensor: Mapping[tuple[int, ...], Poly],
    *,
    y_slots: int,
    factor=1,
    h: int = 0,
    truncation: int | None = None,
) -> WeylForm:
    """``factor h^h T_{i1..ip j1..jq} y^{i1}..y^{ip} dx^{j1}∧..∧dx^{jq}``.

    The first ``y_slots`` indices contract with fiber variables, the rest
    with dx in the listed order.
    """
    bound = chart.n_work if truncation is None else truncation
    scale = as_scalar(factor)
    merged: dict[WeylKey, Poly] = {}
    for index, poly in tensor.items():
        alpha = [0] * chart.dim
        for i in index[:y_slots]:
            alpha[i] += 1
        sign, beta = sort_dx(index[y_slots:])
        if not sign:
            continue
        accumulate(merged, (h, tuple(alpha), beta), poly * (scale * sign))
    return WeylForm.build(chart.ring, merged, bound)


def contract(
    left: Mapping[tuple[int, ...], Poly],
    right: Mapping[tuple[int, ...], Poly],
    pairs: Sequence[tuple[int, int]],
) -> Tensor:
    """Contract slots of ``left`` with slots of ``right``; free slots keep order."""
    left_slots = {a for a, _ in pairs}
    right_slots = {b for _, b in pairs}
    result: Tensor = {}
    for li, lp in left.items():
        for ri, rp in right.items():
            if any(li[a] != ri[b] for a, b in pairs):
                continue
            free = tuple(v for s, v in enumerate(li) if s not in left_slots) + tuple(
                v for s, v in enumerate(ri) if s not in right_slots
            )
            _put(result, free, lp * rp)
    return result


def scale_tensor(tensor: Mapping[tuple[int, ...], Poly], factor) -> Tensor:
    return {index: poly * factor for index, poly in tensor.items() if poly * factor}


__all__ = [
    "Tensor",
    "as_scalar",
    "contract",
    "covariant_derivative_tensor",
    "curvature_tensor",
    "gamma_upper",
    "lower_index",
    "raise_index",
    "scale_tensor",
    "symmetric_y_form",
]
