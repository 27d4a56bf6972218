"""Exact formal Weyl algebra over a Darboux chart."""

from .chart import Chart, GammaIndex, darboux_lower, darboux_upper
from .forms import WeylForm, WeylKey, fedosov_degree, sort_dx, sum_forms, wedge_indices
from .moyal import (
    bracket_over_h,
    fiberwise_product,
    graded_commutator,
    moyal_square_over_h,
    moyal_table,
)
from .operators import (
    connection_form,
    covariant_derivative,
    curvature_form,
    degree_filter,
    delta,
    delta_inv,
    diff_y,
    exterior_d,
    trivial_connection_form,
)
from .polynomials import (
    Poly,
    antiderivative_t,
    at_t,
    coefficient_ring,
    diff_t,
    diff_x,
    integrate_t_0_to_1,
    poly_arith,
    t_variable,
    x_variable,
)
from .scalars import IMAG, Scalar, gaussian, rational
from .tensors import (
    contract,
    covariant_derivative_tensor,
    curvature_tensor,
    gamma_upper,
    lower_index,
    raise_index,
    symmetric_y_form,
)
from .validation import (
    ChartParseError,
    ChartValidationError,
    ConfigurationError,
    ConsistencyError,
    DomainError,
    FedosovError,
    SolvabilityError,
)

__all__ = [
    "Chart",
    "GammaIndex",
    "darboux_lower",
    "darboux_upper",
    "WeylForm",
    "WeylKey",
    "fedosov_degree",
    "sort_dx",
    "sum_forms",
    "wedge_indices",
    "bracket_over_h",
    "fiberwise_product",
    "graded_commutator",
    "moyal_square_over_h",
    "moyal_table",
    "connection_form",
    "covariant_derivative",
    "curvature_form",
    "degree_filter",
    "delta",
    "delta_inv",
    "diff_y",
    "exterior_d",
    "trivial_connection_form",
    "Poly",
    "antiderivative_t",
    "at_t",
    "coefficient_ring",
    "diff_t",
    "diff_x",
    "integrate_t_0_to_1",
    "poly_arith",
    "t_variable",
    "x_variable",
    "IMAG",
    "Scalar",
    "gaussian",
    "rational",
    "contract",
    "covariant_derivative_tensor",
    "curvature_tensor",
    "gamma_upper",
    "lower_index",
    "raise_index",
    "symmetric_y_form",
    "ChartParseError",
    "ChartValidationError",
    "ConfigurationError",
    "ConsistencyError",
    "DomainError",
    "FedosovError",
    "SolvabilityError",
]
