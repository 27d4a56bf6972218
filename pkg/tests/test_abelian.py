import logging

import pytest

from abelian import (
    StarFunction,
    apply_D,
    build_r,
    central_curvature,
    fedosov_curvature,
    fixed_point_map,
    fixed_point_residual,
    lift,
    moyal_star_product,
    project_center,
    quantize_Q,
    solve_D,
    star_commutator,
    star_product,
)
from weyl_core import (
    IMAG,
    Chart,
    ConfigurationError,
    DomainError,
    SolvabilityError,
    WeylForm,
    coefficient_ring,
    curvature_form,
    delta_inv,
    rational,
)


def test_flat_chart_has_no_correction(flat_conn):
    assert flat_conn.r.is_zero()
    assert flat_conn.r_by_degree == {}


def test_g111_correction_is_normalized(conn):
    assert not conn.r.is_zero()
    assert conn.r.min_degree() >= 3
    assert delta_inv(conn.r).is_zero()
    assert conn.r.form_degrees() == {1}


def test_g111_correction_is_a_fixed_point(conn):
    assert fixed_point_residual(conn).is_zero()


def test_fixed_point_map_from_zero(flat_chart, g111_chart, ring):
    zero = WeylForm.zero(ring, 6)
    assert fixed_point_map(flat_chart, zero).is_zero()
    first = fixed_point_map(g111_chart, zero)
    assert first.min_degree() >= 3
    assert first == delta_inv(curvature_form(g111_chart, 6)).truncate(6)


def test_fixed_point_map_rejects_foreign_form(flat_chart):
    with pytest.raises(ConfigurationError):
        fixed_point_map(flat_chart, WeylForm.zero(coefficient_ring(4), 6))


def test_fedosov_curvature_is_central(conn, two_term_chart):
    omega = fedosov_curvature(conn)
    assert omega == central_curvature(conn.chart, omega.truncation)
    other = fedosov_curvature(build_r(two_term_chart))
    assert other == central_curvature(two_term_chart, other.truncation)


def test_build_r_logs_summary(caplog):
    chart = Chart.create(2, n_work=4, h_order=1)
    with caplog.at_level(logging.INFO, logger="abelian.connection"):
        build_r(chart)
    assert "Abelian connection built" in caplog.text


def test_quantize_linear_function_on_flat_chart(flat_conn, ring, x1, fn):
    expected = WeylForm.central(ring, x1, 6) + WeylForm.monomial(ring, 6, y=(0,))
    assert quantize_Q(flat_conn, fn(x1)) == expected


def test_quantized_functions_are_flat(conn, fn, x1, x2):
    for f in (fn(x1), fn(x2**2, x1), fn(x1 * x2 + 1)):
        assert apply_D(conn, quantize_Q(conn, f)).is_zero()


def test_lift_of_central_section_is_quantize(conn, fn, x1, x2):
    f = fn(x1 * x2, x2)
    assert lift(conn, f.to_weyl(conn.n_work)) == quantize_Q(conn, f)


def test_lift_keeps_constant_forms_on_flat_chart(flat_conn, ring):
    form = WeylForm.monomial(ring, 6, dx=(0,))
    assert lift(flat_conn, form) == form


def test_project_center_inverts_quantize(conn, fn, x1, x2):
    f = fn(x1**2 + x2, x1)
    assert project_center(quantize_Q(conn, f)) == f


def test_project_center_rejects_forms(ring):
    with pytest.raises(DomainError):
        project_center(WeylForm.monomial(ring, 4, y=(0,), dx=(1,)))


def test_quantize_rejects_foreign_function(conn):
    other = coefficient_ring(4)
    with pytest.raises(ConfigurationError):
        quantize_Q(conn, StarFunction.one(other))


def test_solve_D_recovers_a_primitive(flat_conn, ring, x1):
    a = WeylForm.monomial(ring, 6, x1, y=(1,))
    b = apply_D(flat_conn, a)
    assert not b.is_zero()
    assert apply_D(flat_conn, solve_D(flat_conn, b)) == b


def test_solve_D_rejects_non_closed_forms(flat_conn, ring, x2):
    with pytest.raises(SolvabilityError):
        solve_D(flat_conn, WeylForm.monomial(ring, 6, x2, dx=(0,)))


def test_solve_D_rejects_zero_forms(flat_conn, ring):
    with pytest.raises(DomainError):
        solve_D(flat_conn, WeylForm.monomial(ring, 6, y=(0,)))


def test_flat_star_product_of_coordinates(flat_conn, fn, x1, x2):
    product = star_product(flat_conn, fn(x1), fn(x2))
    assert product == fn(x1 * x2, IMAG * rational(1, 2))


def test_star_product_logs_at_debug(flat_conn, fn, x1, x2, caplog):
    with caplog.at_level(logging.DEBUG, logger="abelian.star"):
        star_product(flat_conn, fn(x1), fn(x2))
    assert "star product through h^2" in caplog.text


def test_flat_star_product_reduces_to_moyal(ring, fn, x1, x2):
    chart = Chart.create(2, n_work=8, h_order=3)
    conn = build_r(chart)
    for f, g in ((x1**2 * x2, x1 * x2**2), (x1**3, x2**3), (x1 * x2, x2**2)):
        expected = moyal_star_product(chart, fn(f), fn(g), 3)
        assert star_product(conn, fn(f), fn(g), 3) == expected


def test_star_product_is_associative(conn, fn, x1, x2):
    f, g, w = fn(x1 + x2**2), fn(x1 * x2, x2), fn(x2)
    left = star_product(conn, star_product(conn, f, g), w)
    assert left == star_product(conn, f, star_product(conn, g, w))


def test_star_unit(conn, ring, fn, x1, x2):
    one = StarFunction.one(ring)
    f = fn(x1 * x2**2, x1)
    assert star_product(conn, one, f) == f
    assert star_product(conn, f, one) == f


def test_classical_limit_and_bracket(conn, fn, x1, x2):
    f, g = fn(x1**2), fn(x1 * x2)
    assert star_product(conn, f, g).classical == x1**3 * x2
    first = star_commutator(conn, f, g, 1).coefficient(1) * IMAG
    # ω^{ij} ∂_i f ∂_j g with ω^{12} = -1
    assert first == -(x1 * 2) * x1


def test_star_product_order_bound(conn, fn, x1):
    with pytest.raises(ConfigurationError):
        star_product(conn, fn(x1), fn(x1), 4)
    with pytest.raises(ConfigurationError):
        star_product(conn, fn(x1), fn(x1), -1)


class TestStarFunction:
    def test_trailing_zeros_are_trimmed(self, ring, fn, x1):
        assert fn(x1, 0, 0) == fn(x1)
        assert fn(x1, 0).order == 0
        assert StarFunction.zero(ring).order == -1

    def test_arithmetic(self, fn, x1, x2):
        f = fn(x1, x2)
        assert f + (-f) == fn()
        assert (f - fn(x1)).classical == 0
        assert f.scale(2).coefficient(1) == x2 * 2
        assert f.shift_h(1) == fn(0, x1, x2)
        assert f.shift_h(-1) == fn(x2)

    def test_pointwise_product_is_cut(self, fn, x1, x2):
        f = fn(x1, 1)
        assert f.pointwise(f, 1) == fn(x1**2, x1 * 2)

    def test_diff_x(self, fn, x1, x2):
        assert fn(x1**2 * x2, x2).diff_x(1) == fn(x1**2, 1)

    def test_type_and_ring_checks(self, fn, x1):
        with pytest.raises(TypeError):
            fn(x1) + 1
        with pytest.raises(ConfigurationError):
            fn(x1) + StarFunction.one(coefficient_ring(4))

    def test_to_weyl(self, ring, fn, x1):
        form = fn(x1, 1).to_weyl(4)
        assert form.is_central()
        assert form.coefficient(1, (0, 0)) == ring.one
