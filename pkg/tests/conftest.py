from __future__ import annotations

from pathlib import Path

import pytest

from abelian import StarFunction, build_r
from star_calculus import build_frame
from trivialization import build_homotopy, hamiltonian
from weyl_core import Chart, coefficient_ring

CHARTS_DIR = Path(__file__).resolve().parent.parent / "charts"


@pytest.fixture(scope="session")
def charts_dir() -> Path:
    return CHARTS_DIR


@pytest.fixture(scope="session")
def ring():
    return coefficient_ring(2)


@pytest.fixture(scope="session")
def x1(ring):
    return ring.gens[0]


@pytest.fixture(scope="session")
def x2(ring):
    return ring.gens[1]


@pytest.fixture(scope="session")
def fn(ring):
    """Shorthand for StarFunction.of on the 2D ring."""

    def build(*coeffs):
        return StarFunction.of(ring, *coeffs)

    return build


@pytest.fixture(scope="session")
def flat_chart() -> Chart:
    return Chart.create(2, n_work=6, h_order=2)


@pytest.fixture(scope="session")
def g111_chart(x2) -> Chart:
    return Chart.from_entries(2, [((0, 0, 0), x2)], n_work=6, h_order=2)


@pytest.fixture(scope="session")
def two_term_chart(x1, x2) -> Chart:
    return Chart.from_entries(
        2, [((0, 0, 0), x2), ((0, 1, 1), x1 * 2)], n_work=6, h_order=2
    )


@pytest.fixture(scope="session")
def flat_conn(flat_chart):
    return build_r(flat_chart)


@pytest.fixture(scope="session")
def conn(g111_chart):
    return build_r(g111_chart)


@pytest.fixture(scope="session")
def homotopy(conn):
    return build_homotopy(conn)


@pytest.fixture(scope="session")
def triv(homotopy):
    return hamiltonian(homotopy)


@pytest.fixture(scope="session")
def frame(conn, triv):
    return build_frame(conn, triv)


@pytest.fixture(scope="session")
def cross_chart(x1, x2) -> Chart:
    """Both diagonal entries plus the mixed ones; Γ_ijl Γ^{ijk} is nonzero here."""
    return Chart.from_entries(
        2,
        [((0, 0, 0), x2), ((1, 1, 1), x1), ((0, 0, 1), 1), ((0, 1, 1), x1 + x2)],
        n_work=6,
        h_order=2,
    )


@pytest.fixture(scope="session")
def cross_conn(cross_chart):
    return build_r(cross_chart)


@pytest.fixture(scope="session")
def cross_triv(cross_conn):
    return hamiltonian(build_homotopy(cross_conn))


@pytest.fixture(scope="session")
def cross_frame(cross_conn, cross_triv):
    return build_frame(cross_conn, cross_triv)
