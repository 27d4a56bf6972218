import pytest

from abelian import StarFunction
from star_calculus import (
    StarForm,
    StarTensor,
    alt,
    as_tensor,
    basis_rank,
    classical_rank,
    coframe,
    coframe_basis,
    combine_coframe,
    d_star,
    d_star_components,
    eval_on_frame,
    module_mul,
    tensor_star,
    theta,
    wedge_star,
)
from weyl_core import ConfigurationError, rational


@pytest.fixture
def one(ring):
    return StarFunction.one(ring)


def test_star_form_folds_onto_increasing_indices(ring, one):
    assert StarForm(ring, 2, {(1, 0): one}) == StarForm(ring, 2, {(0, 1): -one})
    assert StarForm(ring, 2, {(1, 1): one}).is_zero()
    form = StarForm(ring, 2, {(0, 1): one})
    assert form.component((1, 0)) == -one
    assert eval_on_frame(form, (0, 1)) == one


def test_rank_mismatch_is_rejected(ring, one):
    with pytest.raises(ConfigurationError):
        StarTensor(ring, 2, {(0,): one})
    with pytest.raises(ConfigurationError):
        StarForm(ring, 1, {(0,): one}).component((0, 1))
    with pytest.raises(IndexError):
        StarForm(ring, 1, {(2,): one})


def test_tensor_and_form_do_not_mix(ring, one):
    with pytest.raises(ConfigurationError):
        StarTensor(ring, 1, {(0,): one}) + StarForm(ring, 1, {(0,): one})


def test_alt_and_completion(ring, fn, x1):
    f = fn(x1)
    assert alt(StarTensor(ring, 2, {(0, 1): f})) == StarForm(
        ring, 2, {(0, 1): f.scale(rational(1, 2))}
    )
    completed = as_tensor(StarForm(ring, 2, {(0, 1): f}))
    assert completed.component((1, 0)) == -f
    assert alt(completed) == StarForm(ring, 2, {(0, 1): f})


def test_classical_rank():
    assert classical_rank(4, 2) == 6
    assert classical_rank(2, 0) == 1
    assert classical_rank(2, 3) == 0


class TestCoframeBasis:
    def test_basis_products(self, frame, ring, one):
        assert coframe_basis(frame, 0) == {(): StarForm.function(one)}
        assert coframe_basis(frame, 2) == {(0, 1): StarForm(ring, 2, {(0, 1): one})}

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_rank_is_binomial(self, cross_frame, k):
        assert basis_rank(cross_frame, k) == classical_rank(2, k)

    def test_combination_recovers_coefficients(self, cross_frame, fn, x1, x2):
        coefficients = {(0,): fn(x1 * x2, 1), (1,): fn(x2**2)}
        total = combine_coframe(cross_frame, 1, coefficients)
        for key, value in coefficients.items():
            assert total.component(key) == value

    def test_vanishes_only_for_zero_coefficients(self, cross_frame, ring, fn, x1):
        zero = StarFunction.zero(ring)
        assert combine_coframe(cross_frame, 1, {(0,): zero, (1,): zero}).is_zero()
        assert not combine_coframe(cross_frame, 1, {(0,): zero, (1,): fn(x1)}).is_zero()
        assert not combine_coframe(cross_frame, 2, {(0, 1): fn(0, x1)}).is_zero()

    def test_degree_and_key_are_checked(self, frame, fn, x1):
        with pytest.raises(ConfigurationError):
            coframe_basis(frame, 3)
        with pytest.raises(ConfigurationError):
            combine_coframe(frame, 1, {(0, 1): fn(x1)})


def test_theta_and_coframe(frame, ring, one):
    assert theta(ring, 1) == StarForm(ring, 1, {(1,): one})
    for j in range(2):
        assert coframe(frame, j) == theta(ring, j)


def test_d_star_of_a_function(frame, fn, x1, x2):
    f = fn(x1**2 * x2)
    differential = d_star(frame, StarForm.function(f))
    assert differential.rank == 1
    assert differential.component((0,)).classical == x1 * x2 * 2
    assert differential.component((1,)).classical == x1**2


def test_d_star_squares_to_zero(frame, ring, fn, x1, x2):
    f = fn(x1**2 * x2, x1)
    assert d_star(frame, d_star(frame, StarForm.function(f))).is_zero()
    eta = StarForm(ring, 1, {(0,): fn(x2**2), (1,): fn(x1 * x2)})
    assert d_star(frame, d_star(frame, eta)).is_zero()


def test_d_star_on_top_forms_vanishes(frame, ring, fn, x1):
    assert d_star(frame, StarForm(ring, 2, {(0, 1): fn(x1)})).is_zero()


def test_d_star_leibniz_on_functions(frame, fn, x1, x2):
    f, g = StarForm.function(fn(x1 * x2)), StarForm.function(fn(x2**2, x1))
    left = d_star(frame, wedge_star(frame, f, g))
    right = wedge_star(frame, d_star(frame, f), g) + wedge_star(frame, f, d_star(frame, g))
    assert left == right


def test_d_star_leibniz_on_one_forms(frame, ring, fn, x1, x2):
    eta = StarForm(ring, 1, {(0,): fn(x2), (1,): fn(x1**2)})
    f = StarForm.function(fn(x1 * x2))
    left = d_star(frame, wedge_star(frame, eta, f))
    right = wedge_star(frame, d_star(frame, eta), f) - wedge_star(frame, eta, d_star(frame, f))
    assert left == right


def test_wedge_of_thetas(frame, ring, one):
    top = StarForm(ring, 2, {(0, 1): one})
    assert wedge_star(frame, theta(ring, 0), theta(ring, 1)) == top
    assert wedge_star(frame, theta(ring, 1), theta(ring, 0)) == top.scale(-1)
    assert wedge_star(frame, theta(ring, 0), theta(ring, 0)).is_zero()
    assert wedge_star(frame, top, theta(ring, 0)).is_zero()


def test_wedge_is_associative(frame, ring, fn, x1, x2):
    a = StarForm(ring, 1, {(0,): fn(x2), (1,): fn(x1)})
    b = StarForm.function(fn(x1 * x2))
    c = StarForm(ring, 1, {(1,): fn(x1**2)})
    left = wedge_star(frame, wedge_star(frame, a, b), c)
    assert left == wedge_star(frame, a, wedge_star(frame, b, c))


def test_theta_is_central_for_module_products(frame, ring, fn, x1, x2):
    f = fn(x1 * x2**2, x2)
    generator = theta(ring, 0)
    assert module_mul(frame, "left", f, generator) == module_mul(
        frame, "right", f, generator
    )


def test_module_mul_side(frame, ring, one):
    with pytest.raises(ConfigurationError):
        module_mul(frame, "middle", one, theta(ring, 0))


def test_tensor_star_ranks(frame, ring, fn, x1):
    product = tensor_star(frame, theta(ring, 0), StarTensor(ring, 1, {(1,): fn(x1)}))
    assert product.rank == 2
    assert product.component((0, 1)) == fn(x1)
    assert product.component((1, 0)).is_zero()


def test_components_agree_with_form_differential(frame, ring, fn, x1, x2):
    eta = StarForm(ring, 1, {(0,): fn(x2**2), (1,): fn(x1)})
    assert d_star_components(frame, eta) == d_star(frame, eta)
    plain = StarTensor(ring, 1, {(0,): fn(x2**2), (1,): fn(x1)})
    assert d_star_components(frame, plain) == d_star(frame, eta)
