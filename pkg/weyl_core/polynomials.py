"""Coefficient polynomials in the chart variables and the homotopy time.

Coefficients are sparse sympy ``PolyElement`` values of the ring
``QQ_I[x1, ..., xn, t]``. The last generator is always the homotopy
variable ``t``; everything that is not a homotopy simply never uses it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Literal

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement, PolyRing

from .validation import ConfigurationError, require_index

Poly = PolyElement

PolyOp = Literal["add", "mul", "diff_x_i", "diff_t", "integrate_t_0_to_1"]


@lru_cache(maxsize=None)
def coefficient_ring(dim: int) -> PolyRing:
    names = [f"x{i}" for i in range(1, dim + 1)] + ["t"]
    return PolyRing(names, QQ_I)


def chart_dimension(ring: PolyRing) -> int:
    return ring.ngens - 1


def time_index(ring: PolyRing) -> int:
    return ring.ngens - 1


def x_variable(ring: PolyRing, i: int) -> Poly:
    require_index(i, chart_dimension(ring), what="coordinate index")
    return ring.gens[i]


def t_variable(ring: PolyRing) -> Poly:
    return ring.gens[time_index(ring)]


def diff_x(p: Poly, i: int) -> Poly:
    require_index(i, chart_dimension(p.ring), what="coordinate index")
    return p.diff(i)


def diff_t(p: Poly) -> Poly:
    return p.diff(time_index(p.ring))


def antiderivative_t(p: Poly) -> Poly:
    """Return the antiderivative in ``t`` vanishing at ``t = 0``."""
    ring = p.ring
    k = time_index(ring)
    terms = {}
    for monom, coeff in p.iterterms():
        power = monom[k] + 1
        raised = monom[:k] + (power,) + monom[k + 1 :]
        terms[raised] = coeff * QQ_I(QQ(1, power), QQ.zero)
    return ring.from_dict(terms)


def at_t(p: Poly, value) -> Poly:
    return p.subs(time_index(p.ring), value)


def integrate_t_0_to_1(p: Poly) -> Poly:
    return at_t(antiderivative_t(p), 1)


def depends_on_t(p: Poly) -> bool:
    k = time_index(p.ring)
    return any(monom[k] for monom in p.itermonoms())


def poly_arith(op: PolyOp, p: Poly, q: Poly | int | None = None) -> Poly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "diff_x_i":
        if not isinstance(q, int):
            raise ConfigurationError("diff_x_i needs an integer coordinate index")
        return diff_x(p, q)
    if op == "diff_t":
        return diff_t(p)
    if op == "integrate_t_0_to_1":
        return integrate_t_0_to_1(p)
    raise ConfigurationError(f"Unknown polynomial operation: {op}")


__all__ = [
    "Poly",
    "PolyOp",
    "antiderivative_t",
    "at_t",
    "chart_dimension",
    "coefficient_ring",
    "depends_on_t",
    "diff_t",
    "diff_x",
    "integrate_t_0_to_1",
    "poly_arith",
    "t_variable",
    "time_index",
    "x_variable",
]
