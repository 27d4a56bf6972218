"""Canonical text for series and the parser that reads it back.

A rendered series is a flat sum of terms

    coeff x-part t-part h^k y-part dx-part

with 1-based variable names. Coefficients are integers, parenthesised
fractions, multiples of ``I`` or a parenthesised Gaussian rational. Terms
are ordered by (h-power, Fedosov degree, y-monomial, dx-indices,
x-monomial), so equal values give equal strings. Frame forms use
``theta1 ... thetan`` where Weyl forms use ``dx1 ... dxn``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from tokenize import TokenError
from typing import Literal

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyRing

from abelian.functions import StarFunction
from star_calculus.tensors import StarForm
from weyl_core.forms import WeylForm, fedosov_degree, sort_dx
from weyl_core.polynomials import Poly, chart_dimension
from weyl_core.scalars import Scalar, format_rational
from weyl_core.validation import ChartParseError

SeriesKind = Literal["polynomial", "function", "weyl", "star_form"]

_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)

# (coefficient, x-and-t exponents, h-power, y exponents, dx or theta indices)
FlatTerm = tuple[Scalar, tuple[int, ...], int, tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True, slots=True)
class RenderedTerm:
    h_power: int
    y_degrees: tuple[int, ...]
    dx_indices: tuple[int, ...]
    poly: str
    frame_indices: tuple[int, ...] | None = None

    def to_dict(self) -> dict[str, object]:
        data: dict[str, object] = {
            "h_power": self.h_power,
            "y_degrees": list(self.y_degrees),
            "dx_indices": list(self.dx_indices),
            "poly": self.poly,
        }
        if self.frame_indices is not None:
            data["frame_indices"] = list(self.frame_indices)
        return data


@dataclass(frozen=True, slots=True)
class RenderedSeries:
    kind: SeriesKind
    text: str
    terms: tuple[RenderedTerm, ...] = ()

    def to_dict(self) -> list[dict[str, object]]:
        return [term.to_dict() for term in self.terms]

    def __str__(self) -> str:
        return self.text


# ---------- rendering ----------
def _fraction(value, *, wrap: bool) -> str:
    text = format_rational(value)
    return f"({text})" if wrap and "/" in text else text


def _normalize_sign(value: Scalar) -> tuple[bool, Scalar]:
    re, im = value.x, value.y
    if (re < 0 and not im) or (not re and im < 0):
        return True, -value
    return False, value


def _scalar_text(value: Scalar, *, bare: bool) -> str:
    re, im = value.x, value.y
    if not im:
        if re == 1 and not bare:
            return ""
        return _fraction(re, wrap=True)
    if not re:
        return "I" if im == 1 else f"{_fraction(im, wrap=True)} I"
    sign = "+" if im > 0 else "-"
    magnitude = im if im > 0 else -im
    return f"({format_rational(re)} {sign} {format_rational(magnitude)} I)"


def _power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def _monomial_parts(dim: int, term: FlatTerm, basis: str) -> list[str]:
    _, monom, k, alpha, beta = term
    parts = [_power(f"x{i + 1}", e) for i, e in enumerate(monom[:dim]) if e]
    if monom[dim]:
        parts.append(_power("t", monom[dim]))
    if k:
        parts.append(_power("h", k))
    parts.extend(_power(f"y{i + 1}", e) for i, e in enumerate(alpha) if e)
    parts.extend(f"{basis}{i + 1}" for i in beta)
    return parts


def _sort_key(term: FlatTerm):
    _, monom, k, alpha, beta = term
    return (
        k,
        2 * k + sum(alpha),
        tuple(-e for e in alpha),
        beta,
        tuple(-e for e in monom),
    )


def _join(dim: int, terms: Iterable[FlatTerm], basis: str) -> str:
    pieces: list[str] = []
    for term in sorted(terms, key=_sort_key):
        negative, magnitude = _normalize_sign(term[0])
        parts = _monomial_parts(dim, term, basis)
        scalar = _scalar_text(magnitude, bare=not parts)
        body = " ".join([scalar, *parts] if scalar else parts)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"{'-' if negative else '+'} {body}")
    return " ".join(pieces) if pieces else "0"


def _poly_terms(poly: Poly, k: int, alpha, beta) -> Iterator[FlatTerm]:
    for monom, coeff in poly.terms():
        yield coeff, monom, k, alpha, beta


def render_poly(poly: Poly) -> str:
    dim = chart_dimension(poly.ring)
    zero = (0,) * dim
    return _join(dim, _poly_terms(poly, 0, zero, ()), "dx")


def _weyl_flat(value: WeylForm) -> Iterator[FlatTerm]:
    for (k, alpha, beta), poly in value.items():
        yield from _poly_terms(poly, k, alpha, beta)


def _function_flat(value: StarFunction, beta: tuple[int, ...] = ()) -> Iterator[FlatTerm]:
    zero = (0,) * value.dim
    for k, poly in enumerate(value.coeffs):
        yield from _poly_terms(poly, k, zero, beta)


def render(value: WeylForm | StarFunction | StarForm) -> RenderedSeries:
    """Canonical text plus one structured entry per (h, y, dx) key."""
    if isinstance(value, WeylForm):
        ordered = sorted(
            value.items(),
            key=lambda item: (
                item[0][0],
                fedosov_degree(item[0]),
                tuple(-e for e in item[0][1]),
                item[0][2],
            ),
        )
        terms = tuple(
            RenderedTerm(k, alpha, tuple(i + 1 for i in beta), render_poly(poly))
            for (k, alpha, beta), poly in ordered
        )
        return RenderedSeries("weyl", _join(value.dim, _weyl_flat(value), "dx"), terms)
    if isinstance(value, StarForm):
        flat = [
            term
            for key, component in value.components.items()
            for term in _function_flat(component, key)
        ]
        zero = (0,) * value.dim
        terms = tuple(
            RenderedTerm(k, zero, (), render_poly(poly), tuple(i + 1 for i in key))
            for key, component in value.components.items()
            for k, poly in enumerate(component.coeffs)
            if poly
        )
        return RenderedSeries("star_form", _join(value.dim, flat, "theta"), terms)
    if isinstance(value, StarFunction):
        zero = (0,) * value.dim
        terms = tuple(
            RenderedTerm(k, zero, (), render_poly(poly))
            for k, poly in enumerate(value.coeffs)
            if poly
        )
        return RenderedSeries("function", _join(value.dim, _function_flat(value), "dx"), terms)
    raise TypeError(f"Cannot render {type(value).__name__}")


# ---------- parsing ----------
@lru_cache(maxsize=None)
def _extended_ring(dim: int) -> PolyRing:
    names = [f"x{i}" for i in range(1, dim + 1)] + ["t", "h"]
    names += [f"y{i}" for i in range(1, dim + 1)]
    return PolyRing(names, QQ_I)


@lru_cache(maxsize=None)
def _namespace(dim: int) -> dict[str, object]:
    names: dict[str, object] = {"I": sympy.I}
    for symbol in _extended_ring(dim).symbols:
        names[str(symbol)] = symbol
    for i in range(1, dim + 1):
        names[f"dx{i}"] = sympy.Symbol(f"dx{i}", commutative=False)
        names[f"theta{i}"] = sympy.Symbol(f"theta{i}", commutative=False)
    return names


def _anticommuting_indices(factors, prefix: str, dim: int, text: str) -> tuple[int, ...]:
    indices: list[int] = []
    for factor in factors:
        base, exponent = factor.as_base_exp()
        name = str(base)
        if not (exponent.is_Integer and exponent > 0 and name.startswith(prefix)):
            raise ChartParseError(f"Unexpected factor {factor} in {text!r}")
        indices.extend([int(name[len(prefix) :]) - 1] * int(exponent))
    if any(not 0 <= i < dim for i in indices):
        raise ChartParseError(f"Form index out of range in {text!r}")
    return tuple(indices)


def parse_series(text: str, ring: PolyRing, kind: SeriesKind) -> list[FlatTerm]:
    """Read ``text`` into flat terms, rejecting floats and non-polynomials."""
    dim = chart_dimension(ring)
    try:
        expr = parse_expr(text, local_dict=dict(_namespace(dim)), transformations=_TRANSFORMS)
    except TokenError as exc:
        raise ChartParseError(f"Cannot parse {text!r}: unbalanced or unterminated input") from exc
    except SyntaxError as exc:
        raise ChartParseError(f"Cannot parse {text!r}: {exc.msg}") from exc
    except (TypeError, ValueError) as exc:
        raise ChartParseError(f"Cannot parse {text!r}: {exc}") from exc
    if not isinstance(expr, sympy.Expr):
        raise ChartParseError(f"Not an algebraic expression: {text!r}")
    if expr.atoms(sympy.Float):
        raise ChartParseError(f"Floating point coefficients are not allowed: {text!r}")
    prefix = "theta" if kind == "star_form" else "dx"
    extended = _extended_ring(dim)
    flat: list[FlatTerm] = []
    for term in sympy.Add.make_args(sympy.expand(expr)):
        commutative, anticommuting = term.args_cnc()
        beta = _anticommuting_indices(anticommuting, prefix, dim, text)
        try:
            poly = extended.from_expr(sympy.Mul(*commutative))
        except ValueError as exc:
            raise ChartParseError(f"Not a polynomial in the chart variables: {text!r}") from exc
        sign, ordered = sort_dx(beta)
        if not sign:
            continue
        for monom, coeff in poly.terms():
            k, alpha = monom[dim + 1], monom[dim + 2 :]
            flat.append((coeff * sign, monom[: dim + 1], k, alpha, ordered))
    _check_kind(flat, kind, text)
    return flat


def _check_kind(flat: list[FlatTerm], kind: SeriesKind, text: str) -> None:
    for _, _, k, alpha, beta in flat:
        if kind != "weyl" and any(alpha):
            raise ChartParseError(f"Fiber variables are not allowed here: {text!r}")
        if kind in ("polynomial",) and k:
            raise ChartParseError(f"h is not allowed in a classical polynomial: {text!r}")
        if kind in ("polynomial", "function") and beta:
            raise ChartParseError(f"Form generators are not allowed here: {text!r}")


def _collect(ring: PolyRing, flat: Iterable[FlatTerm]) -> dict[tuple, dict]:
    grouped: dict[tuple, dict] = {}
    for coeff, monom, k, alpha, beta in flat:
        bucket = grouped.setdefault((k, alpha, beta), {})
        bucket[monom] = bucket.get(monom, ring.domain.zero) + coeff
    return grouped


def parse_poly(text: str, ring: PolyRing) -> Poly:
    grouped = _collect(ring, parse_series(text, ring, "polynomial"))
    return sum((ring.from_dict(bucket) for bucket in grouped.values()), ring.zero)


def parse_star_function(text: str, ring: PolyRing) -> StarFunction:
    grouped = _collect(ring, parse_series(text, ring, "function"))
    order = max((key[0] for key in grouped), default=-1)
    coeffs = [ring.zero] * (order + 1)
    for (k, _, _), bucket in grouped.items():
        coeffs[k] += ring.from_dict(bucket)
    return StarFunction(ring, tuple(coeffs))


def parse_weyl_form(text: str, ring: PolyRing, truncation: int) -> WeylForm:
    grouped = _collect(ring, parse_series(text, ring, "weyl"))
    return WeylForm.build(
        ring, ((key, ring.from_dict(bucket)) for key, bucket in grouped.items()), truncation
    )


def parse_star_form(text: str, ring: PolyRing, rank: int | None = None) -> StarForm:
    """Read ``Σ f_I theta^I``; every term must carry the same number of thetas."""
    grouped = _collect(ring, parse_series(text, ring, "star_form"))
    ranks = {len(beta) for (_, _, beta), bucket in grouped.items() if any(bucket.values())}
    if len(ranks) > 1:
        raise ChartParseError(f"Mixed form degrees in {text!r}")
    found = ranks.pop() if ranks else None
    if rank is not None and found is not None and found != rank:
        raise ChartParseError(f"Expected a {rank}-form, got a {found}-form: {text!r}")
    degree = found if found is not None else (rank or 0)
    components: dict[tuple[int, ...], StarFunction] = {}
    for (k, _, beta), bucket in grouped.items():
        piece = StarFunction(ring, (ring.zero,) * k + (ring.from_dict(bucket),))
        current = components.get(beta)
        components[beta] = piece if current is None else current + piece
    return StarForm(ring, degree, components)


__all__ = [
    "RenderedSeries",
    "RenderedTerm",
    "SeriesKind",
    "parse_poly",
    "parse_series",
    "parse_star_form",
    "parse_star_function",
    "parse_weyl_form",
    "render",
    "render_poly",
]
