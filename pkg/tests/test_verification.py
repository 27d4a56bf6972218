import random

import pytest

from chart_io import check_names, run_suite
from chart_io.verification import (
    CheckResult,
    SuiteContext,
    poisson_bracket,
    random_star_form,
    random_weyl_form,
    run_check,
)
from weyl_core import Chart, ConfigurationError, ConsistencyError

FAST_CHECKS = [
    "delta-nilpotent",
    "decomposition",
    "delta-commutator-formula",
    "product-associativity",
    "connection-square",
    "r-normalization",
    "fedosov-curvature",
    "flatness",
    "star-associativity",
    "bracket-relation",
    "hamiltonian-residual",
    "trivialization-correction",
    "frame-lemma",
    "coframe-duality",
    "free-basis",
    "render-roundtrip",
]


def test_selected_checks_pass_on_g111(g111_chart):
    results = run_suite(g111_chart, samples=2, seed=3, only=FAST_CHECKS)
    assert [r.name for r in results] == [n for n in check_names() if n in FAST_CHECKS]
    assert all(r.passed for r in results), [r for r in results if not r.passed]


@pytest.mark.slow
def test_fast_suite_passes_on_two_term_chart(two_term_chart):
    results = run_suite(two_term_chart, samples=2, seed=1)
    assert len(results) == len(check_names(full=False))
    assert all(r.passed for r in results), [r for r in results if not r.passed]


@pytest.mark.slow
def test_full_suite_passes_on_g111(g111_chart):
    results = run_suite(g111_chart, samples=1, seed=5, full=True)
    assert {r.name for r in results} == set(check_names())
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_full_only_checks_are_listed():
    fast, full = set(check_names(full=False)), set(check_names())
    assert full - fast == {"homotopy-profile", "truncation-refinement"}


def test_suite_rejects_inaccurate_chart():
    with pytest.raises(ConfigurationError):
        run_suite(Chart.create(2, n_work=5, h_order=2), samples=1, seed=0)


def test_suite_rejects_bad_arguments(flat_chart):
    with pytest.raises(ConfigurationError):
        run_suite(flat_chart, samples=0, seed=0)
    with pytest.raises(ConfigurationError, match="Unknown checks"):
        run_suite(flat_chart, samples=1, seed=0, only=["no-such-check"])


def test_run_check_reports_residuals(flat_chart, ring):
    ctx = SuiteContext(chart=flat_chart, rng=random.Random(0), samples=1)

    def nonzero(_ctx):
        yield ring.gens[0]

    def message(_ctx):
        yield None
        yield "mismatch"

    def raises(_ctx):
        raise ConsistencyError("broken")
        yield

    assert run_check(ctx, "poly", nonzero) == CheckResult("poly", False, "x1")
    assert run_check(ctx, "message", message) == CheckResult("message", False, "mismatch")
    failed = run_check(ctx, "raises", raises)
    assert not failed.passed
    assert failed.residual == "ConsistencyError: broken"


def test_random_inputs_respect_shapes(ring):
    rng = random.Random(42)
    form = random_weyl_form(rng, ring, 4, form_degree=1)
    assert form.truncation == 4
    assert form.form_degrees() <= {1}
    assert random_star_form(rng, ring, 2).rank == 2


def test_suite_is_seeded(g111_chart):
    only = ["render-roundtrip", "classical-limit"]
    first = run_suite(g111_chart, samples=2, seed=9, only=only)
    second = run_suite(g111_chart, samples=2, seed=9, only=only)
    assert first == second


def test_poisson_bracket(flat_chart, ring, x1, x2):
    assert poisson_bracket(flat_chart, x1, x2) == ring(-1)
    assert poisson_bracket(flat_chart, x2, x1) == ring.one
