"""Property checks over small random polynomials."""

from functools import cache

from hypothesis import given, settings
from hypothesis import strategies as st

from abelian import StarFunction, build_r, moyal_star_product, star_product
from chart_io import parse_star_function, parse_weyl_form, render
from weyl_core import (
    Chart,
    WeylForm,
    coefficient_ring,
    delta,
    delta_inv,
    fiberwise_product,
    rational,
    sum_forms,
)

RING = coefficient_ring(2)
FLAT = Chart.create(2, n_work=6, h_order=2)
G111 = Chart.from_entries(2, [((0, 0, 0), RING.gens[1])], n_work=6, h_order=2)


@cache
def _connection(name):
    return build_r(FLAT if name == "flat" else G111)


fractions = st.builds(rational, st.integers(-4, 4), st.integers(1, 3)).filter(bool)


@st.composite
def polynomials(draw, max_terms=3, max_degree=2):
    poly = RING.zero
    for _ in range(draw(st.integers(1, max_terms))):
        monom = RING.one
        for _ in range(draw(st.integers(0, max_degree))):
            monom *= RING.gens[draw(st.integers(0, 1))]
        poly += monom * draw(fractions)
    return poly


@st.composite
def weyl_forms(draw, truncation=4):
    pieces = []
    for _ in range(draw(st.integers(1, 3))):
        h = draw(st.integers(0, 1))
        y = draw(st.lists(st.integers(0, 1), max_size=truncation - 2 * h))
        dx = draw(st.lists(st.integers(0, 1), max_size=2, unique=True))
        pieces.append(WeylForm.monomial(RING, truncation, draw(polynomials()), h=h, y=y, dx=dx))
    return sum_forms(pieces, RING, truncation)


@settings(max_examples=25, deadline=None)
@given(weyl_forms())
def test_delta_squares_vanish(a):
    assert delta(delta(a)).is_zero()
    assert delta_inv(delta_inv(a)).is_zero()


@settings(max_examples=25, deadline=None)
@given(weyl_forms())
def test_hodge_decomposition(a):
    assert a == a.central_part() + delta(delta_inv(a)) + delta_inv(delta(a))


@settings(max_examples=20, deadline=None)
@given(weyl_forms(), weyl_forms(), weyl_forms())
def test_fiberwise_product_is_associative(a, b, c):
    left = fiberwise_product(fiberwise_product(a, b), c)
    assert left == fiberwise_product(a, fiberwise_product(b, c))


@settings(max_examples=25, deadline=None)
@given(weyl_forms())
def test_weyl_text_roundtrip(a):
    assert parse_weyl_form(render(a).text, RING, a.truncation) == a


@settings(max_examples=25, deadline=None)
@given(polynomials(), polynomials(max_terms=2, max_degree=1))
def test_function_text_roundtrip(f0, f1):
    f = StarFunction(RING, (f0, f1))
    assert parse_star_function(render(f).text, RING) == f


@settings(max_examples=15, deadline=None)
@given(polynomials(), polynomials())
def test_flat_star_product_is_moyal(f, g):
    conn = _connection("flat")
    left, right = StarFunction.of(RING, f), StarFunction.of(RING, g)
    assert star_product(conn, left, right) == moyal_star_product(FLAT, left, right, 2)


@settings(max_examples=10, deadline=None)
@given(polynomials(), polynomials())
def test_star_product_classical_limit(f, g):
    conn = _connection("g111")
    product = star_product(conn, StarFunction.of(RING, f), StarFunction.of(RING, g))
    assert product.classical == f * g
