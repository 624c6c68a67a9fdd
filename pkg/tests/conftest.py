import numpy as np
import pytest

from nctk.linalg import adjoint
from nctk.oneforms import GaugePotential, one_form
from nctk.standard_model import build_internal_triple, default_params


@pytest.fixture
def make_rng():
    """Factory for seeded generators so each test owns its stream."""

    def _make(seed: int) -> np.random.Generator:
        return np.random.default_rng(seed)

    return _make


@pytest.fixture(scope="session")
def sm_params():
    return default_params()


@pytest.fixture(scope="session")
def sm_triple(sm_params):
    # built once: construction itself is cheap but the axiom suites are not
    return build_internal_triple(sm_params)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_sa_element(t, rng):
    """Coordinates of a random self-adjoint algebra element."""
    mats = []
    for c in t.algebra.components:
        x = random_complex(rng, c.n, c.n)
        mats.append(x + adjoint(x))
    return t.algebra.coords_from_matrices(mats)


def imaginary_unit_coords(t):
    """The element (i 1, ..., i 1); present when no quaternion component is."""
    return t.algebra.coords_from_matrices(
        [1j * np.eye(c.n) for c in t.algebra.components])


def sa_potential(t, rng):
    """i [D, pi(h)] for a random self-adjoint h; always a gauge potential."""
    return GaugePotential(one_form(t, [(imaginary_unit_coords(t), random_sa_element(t, rng))]))


def unitary_coords(t, rng):
    """Coordinates of a random unitary element, component by component."""
    mats = []
    for c in t.algebra.components:
        x = random_complex(rng, c.n, c.n)
        q, _ = np.linalg.qr(x + adjoint(x) + 2j * np.eye(c.n))
        mats.append(q)
    return t.algebra.coords_from_matrices(mats)
