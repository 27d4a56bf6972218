"""Invariant checks run by ``verify``.

Each check yields residuals that must vanish (or ``None`` for a passing
sample); the first nonzero residual is reported as the counterexample.
Random inputs come from a seeded ``random.Random`` so a run is repeatable.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

from sympy.polys.rings import PolyRing

from abelian import (
    AbelianConnection,
    StarFunction,
    apply_D,
    build_r,
    central_curvature,
    fedosov_curvature,
    fixed_point_residual,
    moyal_star_product,
    project_center,
    quantize_Q,
    star_commutator,
    star_product,
)
from star_calculus import (
    Frame,
    StarForm,
    StarTensor,
    alt,
    basis_rank,
    build_frame,
    classical_rank,
    coframe,
    coframe_basis,
    combine_coframe,
    d_star,
    d_star_components,
    derivation_correction,
    derive,
    derive_via_trivialization,
    lambda_expansion,
    lemma_residual,
    module_mul,
    theta,
    wedge_star,
)
from trivialization import (
    TrivializationMap,
    apply_T,
    apply_T_inv,
    build_homotopy,
    endpoint_mismatch,
    hamiltonian,
    hamiltonian_expansion,
    hamiltonian_residual,
    homotopy_curvature,
    trivialization_correction,
)
from weyl_core import (
    Chart,
    Poly,
    WeylForm,
    bracket_over_h,
    covariant_derivative,
    curvature_form,
    delta,
    delta_inv,
    exterior_d,
    fiberwise_product,
    graded_commutator,
    rational,
    sort_dx,
    sum_forms,
    trivial_connection_form,
)
from weyl_core.polynomials import chart_dimension
from weyl_core.scalars import IMAG
from weyl_core.validation import ConfigurationError, FedosovError

from .render import (
    parse_star_form,
    parse_star_function,
    parse_weyl_form,
    render,
    render_poly,
)

log = logging.getLogger(__name__)

Residual = WeylForm | StarFunction | StarForm | Poly | str | None

_COEFFICIENTS = ((1, 1), (-1, 1), (2, 1), (1, 2), (-3, 2), (1, 3))
WEYL_SAMPLE_DEGREE = 4


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    passed: bool
    residual: str = "0"

    def to_dict(self) -> dict[str, object]:
        return {"name": self.name, "passed": self.passed, "residual": self.residual}


# ---------- random inputs ----------
def random_poly(rng: random.Random, ring: PolyRing, *, max_degree: int = 2) -> Poly:
    dim = chart_dimension(ring)
    poly = ring.zero
    for _ in range(rng.randint(1, 3)):
        monom = ring.one
        for _ in range(rng.randint(0, max_degree)):
            monom *= ring.gens[rng.randrange(dim)]
        poly += monom * rational(*rng.choice(_COEFFICIENTS))
    return poly or ring.one


def random_function(rng: random.Random, ring: PolyRing, *, max_degree: int = 2) -> StarFunction:
    coeffs = [random_poly(rng, ring, max_degree=max_degree)]
    if rng.random() < 0.5:
        coeffs.append(random_poly(rng, ring, max_degree=1))
    return StarFunction(ring, tuple(coeffs))


def random_weyl_form(
    rng: random.Random, ring: PolyRing, truncation: int, form_degree: int = 0
) -> WeylForm:
    dim = chart_dimension(ring)
    pieces = []
    for _ in range(rng.randint(1, 3)):
        h = rng.randint(0, min(1, truncation // 2))
        size = rng.randint(0, min(3, truncation - 2 * h))
        y = [rng.randrange(dim) for _ in range(size)]
        dx = sorted(rng.sample(range(dim), form_degree))
        coeff = random_poly(rng, ring, max_degree=1)
        pieces.append(WeylForm.monomial(ring, truncation, coeff, h=h, y=y, dx=dx))
    return sum_forms(pieces, ring, truncation)


def random_star_form(rng: random.Random, ring: PolyRing, rank: int) -> StarForm:
    dim = chart_dimension(ring)
    components = {
        key: random_function(rng, ring, max_degree=1)
        for key in itertools.combinations(range(dim), rank)
        if rng.random() < 0.8
    }
    return StarForm(ring, rank, components)


def poisson_bracket(chart: Chart, f: Poly, g: Poly) -> Poly:
    total = chart.ring.zero
    for i, row in enumerate(chart.omega_upper):
        for j, weight in enumerate(row):
            if weight:
                total += f.diff(i) * g.diff(j) * weight
    return total


# ---------- suite context ----------
@dataclass
class SuiteContext:
    chart: Chart
    rng: random.Random
    samples: int
    full: bool = False

    @property
    def ring(self) -> PolyRing:
        return self.chart.ring

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def order(self) -> int:
        return self.chart.h_order

    @cached_property
    def conn(self) -> AbelianConnection:
        return build_r(self.chart)

    @cached_property
    def flat_conn(self) -> AbelianConnection:
        return build_r(self.chart.flat())

    @cached_property
    def triv(self) -> TrivializationMap:
        return hamiltonian(build_homotopy(self.conn))

    @cached_property
    def frame(self) -> Frame:
        return build_frame(self.conn, self.triv, check=False)

    def function(self, max_degree: int = 2) -> StarFunction:
        return random_function(self.rng, self.ring, max_degree=max_degree)

    def classical(self, max_degree: int = 2) -> StarFunction:
        return StarFunction.of(self.ring, random_poly(self.rng, self.ring, max_degree=max_degree))

    def weyl(self, form_degree: int = 0) -> WeylForm:
        degree = min(form_degree, self.dim)
        return random_weyl_form(self.rng, self.ring, WEYL_SAMPLE_DEGREE, degree)


Check = Callable[[SuiteContext], Iterable[Residual]]
CHECKS: list[tuple[str, Check, bool]] = []


def check(name: str, *, full_only: bool = False) -> Callable[[Check], Check]:
    """Register a check; ``full_only`` checks run in full mode only."""

    def decorator(fn: Check) -> Check:
        CHECKS.append((name, fn, full_only))
        return fn

    return decorator


def _condition(ok: bool, message: str) -> str | None:
    return None if ok else message


# ---------- Weyl algebra ----------
@check("delta-nilpotent")
def _delta_nilpotent(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        yield delta(delta(ctx.weyl(ctx.rng.randint(0, 1))))


@check("delta-inverse-nilpotent")
def _delta_inv_nilpotent(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        yield delta_inv(delta_inv(ctx.weyl(ctx.rng.randint(1, 2))))


@check("decomposition")
def _decomposition(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a = ctx.weyl(ctx.rng.randint(0, 2))
        yield a - a.central_part() - delta(delta_inv(a)) - delta_inv(delta(a))


@check("delta-commutator-formula")
def _delta_commutator(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a = ctx.weyl(ctx.rng.randint(0, 1))
        omega = trivial_connection_form(ctx.chart, a.truncation + 1)
        yield delta(a) + bracket_over_h(omega, a)


@check("product-associativity")
def _product_associativity(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a, b, c = ctx.weyl(), ctx.weyl(ctx.rng.randint(0, 1)), ctx.weyl()
        yield fiberwise_product(fiberwise_product(a, b), c) - fiberwise_product(
            a, fiberwise_product(b, c)
        )


@check("product-unit")
def _product_unit(ctx: SuiteContext) -> Iterator[Residual]:
    one = WeylForm.monomial(ctx.ring, WEYL_SAMPLE_DEGREE)
    for _ in range(ctx.samples):
        a = ctx.weyl(ctx.rng.randint(0, 1))
        yield fiberwise_product(one, a) - a
        yield fiberwise_product(a, one) - a


@check("degree-additivity")
def _degree_additivity(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a, b = ctx.weyl(), ctx.weyl()
        product = fiberwise_product(a, b)
        for m in range(product.truncation + 1):
            pieces = [
                fiberwise_product(a.degree_part(p), b.degree_part(m - p))
                for p in range(m + 1)
            ]
            yield product.degree_part(m) - sum_forms(pieces, ctx.ring, product.truncation)


@check("delta-leibniz")
def _delta_leibniz(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        k = ctx.rng.randint(0, 1)
        a, b = ctx.weyl(k), ctx.weyl()
        right = fiberwise_product(delta(a), b)
        other = fiberwise_product(a, delta(b))
        right = right - other if k % 2 else right + other
        yield delta(fiberwise_product(a, b)) - right


@check("connection-leibniz")
def _connection_leibniz(ctx: SuiteContext) -> Iterator[Residual]:
    chart = ctx.chart
    for _ in range(ctx.samples):
        k = ctx.rng.randint(0, 1)
        a, b = ctx.weyl(k), ctx.weyl()
        right = fiberwise_product(covariant_derivative(chart, a), b)
        other = fiberwise_product(a, covariant_derivative(chart, b))
        right = right - other if k % 2 else right + other
        yield covariant_derivative(chart, fiberwise_product(a, b)) - right


@check("connection-square")
def _connection_square(ctx: SuiteContext) -> Iterator[Residual]:
    chart = ctx.chart
    for _ in range(ctx.samples):
        a = ctx.weyl()
        twice = covariant_derivative(chart, covariant_derivative(chart, a))
        yield twice - bracket_over_h(curvature_form(chart, a.truncation + 2), a)


@check("center")
def _center(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a = ctx.weyl(ctx.rng.randint(0, 1))
        z = ctx.weyl(ctx.rng.randint(0, 1)).central_part()
        yield graded_commutator(z, a)
        if a.fiber_part().is_zero():
            continue
        probes = [
            bracket_over_h(a, WeylForm.monomial(ctx.ring, a.truncation, y=(j,)))
            for j in range(ctx.dim)
        ]
        yield _condition(
            any(not probe.is_zero() for probe in probes),
            f"non-central element commutes with every generator: {render(a).text}",
        )


# ---------- Abelian connection and star product ----------
@check("r-normalization")
def _r_normalization(ctx: SuiteContext) -> Iterator[Residual]:
    r = ctx.conn.r
    yield delta_inv(r)
    low = r.min_degree()
    yield _condition(low is None or low >= 3, f"r has a term of degree {low}")


@check("r-fixed-point")
def _r_fixed_point(ctx: SuiteContext) -> Iterator[Residual]:
    yield fixed_point_residual(ctx.conn)


@check("fedosov-curvature")
def _fedosov_curvature(ctx: SuiteContext) -> Iterator[Residual]:
    omega = fedosov_curvature(ctx.conn)
    yield omega - central_curvature(ctx.chart, omega.truncation)


@check("quantize-roundtrip")
def _quantize_roundtrip(ctx: SuiteContext) -> Iterator[Residual]:
    bound = ctx.chart.n_work // 2
    for _ in range(ctx.samples):
        f = ctx.function()
        yield project_center(quantize_Q(ctx.conn, f)) - f.truncate(bound)


@check("flat-section-roundtrip")
def _flat_roundtrip(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a = fiberwise_product(
            quantize_Q(ctx.conn, ctx.function()), quantize_Q(ctx.conn, ctx.function())
        )
        yield quantize_Q(ctx.conn, project_center(a)) - a


@check("flatness")
def _flatness(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        yield apply_D(ctx.conn, quantize_Q(ctx.conn, ctx.function()))


@check("star-associativity")
def _star_associativity(ctx: SuiteContext) -> Iterator[Residual]:
    conn = ctx.conn
    for _ in range(ctx.samples):
        f, g, w = ctx.function(), ctx.function(), ctx.function()
        left = star_product(conn, star_product(conn, f, g), w)
        yield left - star_product(conn, f, star_product(conn, g, w))


@check("star-unit")
def _star_unit(ctx: SuiteContext) -> Iterator[Residual]:
    one = StarFunction.one(ctx.ring)
    for _ in range(ctx.samples):
        f = ctx.function()
        yield star_product(ctx.conn, one, f) - f.truncate(ctx.order)
        yield star_product(ctx.conn, f, one) - f.truncate(ctx.order)


@check("classical-limit")
def _classical_limit(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        f, g = ctx.function(), ctx.function()
        yield star_product(ctx.conn, f, g).classical - f.classical * g.classical


@check("bracket-relation")
def _bracket_relation(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        f, g = ctx.function(), ctx.function()
        first = star_commutator(ctx.conn, f, g, 1).coefficient(1) * IMAG
        yield first - poisson_bracket(ctx.chart, f.classical, g.classical)


@check("moyal-reduction")
def _moyal_reduction(ctx: SuiteContext) -> Iterator[Residual]:
    flat = ctx.chart.flat()
    ring = ctx.ring
    for _ in range(ctx.samples):
        f, g = (
            StarFunction.of(ring, _random_monomial(ctx.rng, ring, 4)) for _ in range(2)
        )
        expected = moyal_star_product(flat, f, g, ctx.order)
        yield star_product(ctx.flat_conn, f, g, ctx.order) - expected


def _random_monomial(rng: random.Random, ring: PolyRing, max_degree: int) -> Poly:
    monom = ring.one
    for _ in range(rng.randint(0, max_degree)):
        monom *= ring.gens[rng.randrange(chart_dimension(ring))]
    return monom


# ---------- trivialization ----------
@check("hamiltonian-residual")
def _hamiltonian_residual(ctx: SuiteContext) -> Iterator[Residual]:
    yield hamiltonian_residual(ctx.triv)


@check("hamiltonian-degree")
def _hamiltonian_degree(ctx: SuiteContext) -> Iterator[Residual]:
    low = ctx.triv.H_t.min_degree()
    yield _condition(low is None or low >= 3, f"H has a term of degree {low}")


@check("hamiltonian-expansion")
def _hamiltonian_expansion(ctx: SuiteContext) -> Iterator[Residual]:
    yield ctx.triv.H_t - hamiltonian_expansion(ctx.triv.homotopy)


@check("homotopy-endpoints")
def _homotopy_endpoints(ctx: SuiteContext) -> Iterator[Residual]:
    yield from endpoint_mismatch(ctx.triv.homotopy)


@check("homotopy-curvature")
def _homotopy_curvature(ctx: SuiteContext) -> Iterator[Residual]:
    omega = homotopy_curvature(ctx.triv.homotopy)
    yield omega - central_curvature(ctx.chart, omega.truncation)


@check("trivialization-flatness")
def _trivialization_flatness(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        f = ctx.function()
        forward = apply_T(ctx.triv, quantize_Q(ctx.conn, f))
        yield exterior_d(forward) - delta(forward)
        yield apply_D(ctx.conn, apply_T_inv(ctx.triv, quantize_Q(ctx.flat_conn, f)))


@check("trivialization-roundtrip")
def _trivialization_roundtrip(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        f = ctx.function()
        trivial = quantize_Q(ctx.flat_conn, f)
        yield apply_T(ctx.triv, apply_T_inv(ctx.triv, trivial)) - trivial
        flat = quantize_Q(ctx.conn, f)
        yield apply_T_inv(ctx.triv, apply_T(ctx.triv, flat)) - flat


@check("trivialization-morphism")
def _trivialization_morphism(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        a = quantize_Q(ctx.conn, ctx.function())
        b = quantize_Q(ctx.conn, ctx.function())
        image = fiberwise_product(apply_T(ctx.triv, a), apply_T(ctx.triv, b))
        yield apply_T(ctx.triv, fiberwise_product(a, b)) - image


@check("trivialization-correction")
def _trivialization_correction(ctx: SuiteContext) -> Iterator[Residual]:
    if ctx.order < 2:
        return
    for _ in range(ctx.samples):
        f = ctx.classical(3)
        correction = trivialization_correction(ctx.chart, f.classical)
        inverse = project_center(apply_T_inv(ctx.triv, quantize_Q(ctx.flat_conn, f)))
        yield inverse.truncate(2) - StarFunction.of(ctx.ring, f.classical, 0, correction)
        forward = project_center(apply_T(ctx.triv, quantize_Q(ctx.conn, f)))
        yield forward.truncate(2) - StarFunction.of(ctx.ring, f.classical, 0, -correction)


@check("homotopy-profile", full_only=True)
def _homotopy_profile(ctx: SuiteContext) -> Iterator[Residual]:
    squared = hamiltonian(build_homotopy(ctx.conn, power=2))
    f = ctx.classical()
    seed = quantize_Q(ctx.flat_conn, f)
    yield apply_T_inv(squared, seed) - apply_T_inv(ctx.triv, seed)


# ---------- frame and calculus ----------
@check("frame-lemma")
def _frame_lemma(ctx: SuiteContext) -> Iterator[Residual]:
    for i in range(ctx.dim):
        for j in range(ctx.dim):
            yield lemma_residual(ctx.frame, i, j)


@check("frame-expansion")
def _frame_expansion(ctx: SuiteContext) -> Iterator[Residual]:
    ring = ctx.ring
    corrections = lambda_expansion(ctx.chart)
    for i, row in enumerate(ctx.chart.omega_lower):
        linear = sum((ring.gens[j] * w for j, w in enumerate(row) if w), ring.zero)
        expected = StarFunction.of(ring, linear, 0, corrections[i])
        yield ctx.frame.lambdas[i].truncate(2) - expected.truncate(ctx.order)


@check("derivations-commute")
def _derivations_commute(ctx: SuiteContext) -> Iterator[Residual]:
    frame = ctx.frame
    for _ in range(ctx.samples):
        f = ctx.function()
        for i, j in itertools.combinations(range(ctx.dim), 2):
            yield derive(frame, i, derive(frame, j, f)) - derive(frame, j, derive(frame, i, f))


@check("derivation-cross-path")
def _derivation_cross_path(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        f = ctx.function()
        i = ctx.rng.randrange(ctx.dim)
        yield derive(ctx.frame, i, f) - derive_via_trivialization(ctx.frame, i, f)


@check("derivation-correction")
def _derivation_correction(ctx: SuiteContext) -> Iterator[Residual]:
    if ctx.order < 2:
        return
    for _ in range(ctx.samples):
        f = ctx.classical(3).classical
        for i in range(ctx.dim):
            correction = derivation_correction(ctx.chart, f, i)
            expected = StarFunction.of(ctx.ring, f.diff(i), 0, correction)
            yield derive(ctx.frame, i, StarFunction.of(ctx.ring, f)).truncate(2) - expected


@check("calculus-classical-limit")
def _calculus_classical_limit(ctx: SuiteContext) -> Iterator[Residual]:
    frame = ctx.frame
    for _ in range(ctx.samples):
        f = ctx.function()
        differential = d_star(frame, StarForm.function(f))
        for i in range(ctx.dim):
            yield differential.component((i,)).classical - f.classical.diff(i)
        eta, xi = random_star_form(ctx.rng, ctx.ring, 1), random_star_form(ctx.rng, ctx.ring, 1)
        product = wedge_star(frame, eta, xi)
        for i, j in itertools.combinations(range(ctx.dim), 2):
            classical = (
                eta.component((i,)).classical * xi.component((j,)).classical
                - eta.component((j,)).classical * xi.component((i,)).classical
            )
            yield product.component((i, j)).classical - classical


@check("d-star-nilpotent")
def _d_star_nilpotent(ctx: SuiteContext) -> Iterator[Residual]:
    for _ in range(ctx.samples):
        for rank in range(min(ctx.dim, 2) + 1):
            form = random_star_form(ctx.rng, ctx.ring, rank)
            yield d_star(ctx.frame, d_star(ctx.frame, form))


@check("d-star-leibniz")
def _d_star_leibniz(ctx: SuiteContext) -> Iterator[Residual]:
    frame = ctx.frame
    for _ in range(ctx.samples):
        k, l = ctx.rng.randint(0, 1), ctx.rng.randint(0, 1)
        eta = random_star_form(ctx.rng, ctx.ring, k)
        xi = random_star_form(ctx.rng, ctx.ring, l)
        first = wedge_star(frame, d_star(frame, eta), xi)
        second = wedge_star(frame, eta, d_star(frame, xi))
        right = first - second if k % 2 else first + second
        yield d_star(frame, wedge_star(frame, eta, xi)) - right


@check("wedge-associativity")
def _wedge_associativity(ctx: SuiteContext) -> Iterator[Residual]:
    frame = ctx.frame
    for _ in range(ctx.samples):
        forms = [random_star_form(ctx.rng, ctx.ring, ctx.rng.randint(0, 1)) for _ in range(3)]
        a, b, c = forms
        yield wedge_star(frame, wedge_star(frame, a, b), c) - wedge_star(
            frame, a, wedge_star(frame, b, c)
        )


@check("theta-relations")
def _theta_relations(ctx: SuiteContext) -> Iterator[Residual]:
    frame, ring = ctx.frame, ctx.ring
    for k in range(1, ctx.dim + 1):
        base = tuple(range(k))
        top = StarForm(ring, k, {base: StarFunction.one(ring)})
        for perm in itertools.permutations(base):
            product = theta(ring, perm[0])
            for j in perm[1:]:
                product = wedge_star(frame, product, theta(ring, j))
            sign, _ = sort_dx(perm)
            yield product - top.scale(rational(sign))
    for j in range(ctx.dim):
        yield wedge_star(frame, theta(ring, j), theta(ring, j))
    for _ in range(ctx.samples):
        f = ctx.function()
        j = ctx.rng.randrange(ctx.dim)
        generator = theta(ring, j)
        yield module_mul(frame, "left", f, generator) - module_mul(frame, "right", f, generator)


@check("coframe-duality")
def _coframe_duality(ctx: SuiteContext) -> Iterator[Residual]:
    for j in range(ctx.dim):
        yield coframe(ctx.frame, j) - theta(ctx.ring, j)


@check("free-basis")
def _free_basis(ctx: SuiteContext) -> Iterator[Residual]:
    frame, n = ctx.frame, ctx.dim
    for k in range(n + 1):
        basis = coframe_basis(frame, k)
        expected = classical_rank(n, k)
        rank = basis_rank(frame, k, basis=basis)
        yield _condition(rank == expected, f"degree {k}: rank {rank}, expected {expected}")
        for _ in range(ctx.samples):
            coefficients = {key: ctx.function() for key in basis}
            if ctx.rng.random() < 0.5:
                coefficients[ctx.rng.choice(list(basis))] = StarFunction.zero(ctx.ring)
            total = combine_coframe(frame, k, coefficients, basis=basis)
            all_zero = all(value.is_zero() for value in coefficients.values())
            yield _condition(
                total.is_zero() == all_zero, f"degree {k}: vanishing does not match coefficients"
            )
            for key, value in coefficients.items():
                yield total.component(key) - value


@check("representative-independence")
def _representative_independence(ctx: SuiteContext) -> Iterator[Residual]:
    frame, ring = ctx.frame, ctx.ring
    for _ in range(ctx.samples):
        for rank in (1, 2):
            components = {
                key: random_function(ctx.rng, ring, max_degree=1)
                for key in itertools.product(range(ctx.dim), repeat=rank)
                if ctx.rng.random() < 0.7
            }
            tensor = StarTensor(ring, rank, components)
            shifted = dict(components)
            if rank == 2:
                g = random_function(ctx.rng, ring, max_degree=1)
                for key in ((0, 1), (1, 0)):
                    shifted[key] = shifted[key] + g if key in shifted else g
            reference = d_star(frame, alt(tensor))
            yield d_star_components(frame, tensor) - reference
            yield d_star_components(frame, StarTensor(ring, rank, shifted)) - reference


# ---------- text surface ----------
@check("render-roundtrip")
def _render_roundtrip(ctx: SuiteContext) -> Iterator[Residual]:
    ring = ctx.ring
    for _ in range(ctx.samples):
        a = ctx.weyl(ctx.rng.randint(0, 2))
        yield parse_weyl_form(render(a).text, ring, a.truncation) - a
        f = ctx.function()
        yield parse_star_function(render(f).text, ring) - f
        form = random_star_form(ctx.rng, ring, ctx.rng.randint(0, 2))
        yield parse_star_form(render(form).text, ring, form.rank) - form


# ---------- refinement ----------
@check("truncation-refinement", full_only=True)
def _truncation_refinement(ctx: SuiteContext) -> Iterator[Residual]:
    finer = ctx.chart.with_truncation(ctx.chart.n_work + 2)
    conn = build_r(finer)
    triv = hamiltonian(build_homotopy(conn))
    yield conn.r - ctx.conn.r
    yield triv.H_t - ctx.triv.H_t
    frame = build_frame(conn, triv, check=False)
    fine_flat = build_r(finer.flat())
    for coarse, fine in zip(ctx.frame.lambdas, frame.lambdas, strict=True):
        yield fine - coarse
    for _ in range(ctx.samples):
        f, g = ctx.function(), ctx.function()
        yield star_product(conn, f, g) - star_product(ctx.conn, f, g)
        seed = ctx.classical()
        fine_image = project_center(apply_T_inv(triv, quantize_Q(fine_flat, seed)))
        coarse_image = project_center(apply_T_inv(ctx.triv, quantize_Q(ctx.flat_conn, seed)))
        yield (fine_image - coarse_image).truncate(ctx.order)


# ---------- runner ----------
def _is_failure(residual: Residual) -> bool:
    if residual is None:
        return False
    if isinstance(residual, str):
        return True
    if isinstance(residual, (WeylForm, StarFunction, StarTensor)):
        return not residual.is_zero()
    return bool(residual)


def _describe(residual: Residual) -> str:
    if isinstance(residual, str):
        return residual
    if isinstance(residual, (WeylForm, StarFunction, StarForm)):
        return render(residual).text
    if isinstance(residual, StarTensor):
        return repr(residual.components)
    return render_poly(residual)


def run_check(ctx: SuiteContext, name: str, fn: Check) -> CheckResult:
    try:
        for residual in fn(ctx):
            if _is_failure(residual):
                log.warning("Check %s failed", name)
                return CheckResult(name, False, _describe(residual))
    except (FedosovError, IndexError) as exc:
        log.warning("Check %s raised %s", name, exc)
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    log.info("Check %s passed", name)
    return CheckResult(name, True)


def run_suite(
    chart: Chart,
    *,
    samples: int,
    seed: int,
    full: bool = False,
    only: Iterable[str] | None = None,
) -> list[CheckResult]:
    """Run every registered check (or the ``only`` subset) in order."""
    if not chart.accuracy_ok():
        raise ConfigurationError(
            f"verify needs a working degree of at least {2 * chart.h_order + 2},"
            f" got {chart.n_work}"
        )
    if samples < 1:
        raise ConfigurationError(f"samples must be positive, got {samples}")
    wanted = None if only is None else set(only)
    if wanted is not None:
        unknown = wanted - {name for name, _, _ in CHECKS}
        if unknown:
            raise ConfigurationError(f"Unknown checks: {', '.join(sorted(unknown))}")
    ctx = SuiteContext(chart=chart, rng=random.Random(seed), samples=samples, full=full)
    results = []
    for name, fn, full_only in CHECKS:
        if wanted is not None and name not in wanted:
            continue
        if full_only and not full:
            continue
        results.append(run_check(ctx, name, fn))
    return results


def check_names(*, full: bool = True) -> list[str]:
    return [name for name, _, full_only in CHECKS if full or not full_only]


__all__ = [
    "CHECKS",
    "CheckResult",
    "SuiteContext",
    "check_names",
    "poisson_bracket",
    "random_function",
    "random_poly",
    "random_star_form",
    "random_weyl_form",
    "run_check",
    "run_suite",
]
