import numpy as np
import pytest

from nctk.algebra import (
    PureState,
    hopf_project,
    make_algebra,
    make_component,
    state_eval,
    state_functional_coords,
)
from nctk.models import bloch_state, two_point_triple


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.mark.parametrize("kind,n,sa,alg", [
    ("C", 1, 1, 2),
    ("H", 2, 1, 4),
    ("Mn", 1, 1, 2),
    ("Mn", 2, 4, 8),
    ("Mn", 3, 9, 18),
])
def test_component_dimensions(kind, n, sa, alg):
    c = make_component(kind, n)
    assert c.sa_dim == sa
    assert c.alg_dim == alg
    for e in c.sa_basis:
        assert np.allclose(e, e.conj().T)


def test_component_kind_validation():
    with pytest.raises(ValueError):
        make_component("C", 2)
    with pytest.raises(ValueError):
        make_component("H", 3)
    with pytest.raises(ValueError):
        make_component("Mn", 0)
    with pytest.raises(ValueError):
        make_component("R", 1)


def test_quaternion_component_closed_under_products():
    # span over R of {1, i sigma_x, i sigma_y, i sigma_z} must be closed
    c = make_component("H", 2)
    rng = np.random.default_rng(3)
    x = c.element_from_coords(rng.standard_normal(4))
    y = c.element_from_coords(rng.standard_normal(4))
    c.coords_from_element(x @ y)  # raises if the product escapes the span


def test_coords_roundtrip():
    rng = np.random.default_rng(5)
    for spec in [("C", 1), ("H", 2), ("Mn", 3)]:
        c = make_component(*spec)
        coords = rng.standard_normal(c.alg_dim)
        back = c.coords_from_element(c.element_from_coords(coords))
        assert np.allclose(back, coords, atol=1e-12)


def test_coords_from_element_rejects_outsiders():
    c = make_component("H", 2)
    # sigma_x alone is not a quaternion (it is i * (i sigma_x) with real span only)
    with pytest.raises(ValueError):
        c.coords_from_element(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_algebra_offsets_and_unit():
    alg = make_algebra(("H", 2, "h"), ("C", 1, "c"), ("Mn", 3, "m3"))
    assert alg.sa_dim == 1 + 1 + 9
    assert alg.alg_dim == 4 + 2 + 18
    assert alg.sa_offset(2) == 2
    assert alg.alg_offset(2) == 6
    unit = alg.element_matrices(alg.unit_coords())
    for comp, m in zip(alg.components, unit):
        assert np.allclose(m, np.eye(comp.n))


def test_algebra_label_uniqueness():
    with pytest.raises(ValueError):
        make_algebra(("C", 1, "a"), ("C", 1, "a"))


def test_representation_multiplicativity_defect_zero():
    t = two_point_triple([1.0, 0.5j], representation="matrix")
    assert t.rep.multiplicativity_defect() <= 1e-12


def test_pure_state_validation_and_phase():
    with pytest.raises(ValueError):
        PureState(0, [1.0, 1.0])  # not normalized
    with pytest.raises(ValueError):
        PureState(0, [])
    s = PureState(0, np.array([1.0j, 0.0]) )
    # leading phase is stripped
    assert s.vector[0] == pytest.approx(1.0)
    t = PureState(0, np.array([0.6 * np.exp(0.7j), 0.8 * np.exp(0.7j)]))
    assert t.vector[0].imag == pytest.approx(0.0, abs=1e-15)
    assert abs(t.vector[1] - 0.8) < 1e-12


def test_state_eval_real_and_linear():
    rng = np.random.default_rng(9)
    v = random_complex(rng, 3)
    s = PureState(0, v / np.linalg.norm(v))
    a = random_complex(rng, 3, 3)
    h = a + a.conj().T
    val = state_eval(s, h)
    assert val == pytest.approx(float(np.vdot(s.vector, h @ s.vector).real))
    with pytest.raises(ValueError):
        state_eval(s, a)  # not self-adjoint
    with pytest.raises(ValueError):
        state_eval(s, np.eye(2))  # wrong shape


def test_state_functional_coords_support():
    t = two_point_triple([1.0, -2.0], representation="vector")
    s = PureState(1, [1.0])
    coords = state_functional_coords(s, t.rep)
    assert coords.shape == (t.algebra.sa_dim,)
    # scalar component occupies the final slot only
    assert coords[-1] == pytest.approx(1.0)
    assert np.allclose(coords[:-1], 0.0)


def test_state_functional_coords_validation():
    t = two_point_triple([1.0, 0.0], representation="vector")
    with pytest.raises(ValueError):
        state_functional_coords(PureState(2, [1.0]), t.rep)  # index out of range
    with pytest.raises(ValueError):
        state_functional_coords(PureState(0, [1.0]), t.rep)  # dim 1 on a 2x2 component


def test_hopf_project_and_bloch_state_inverse():
    rng = np.random.default_rng(21)
    for _ in range(40):
        v = random_complex(rng, 2)
        v = v / np.linalg.norm(v)
        p = hopf_project(v)
        assert np.linalg.norm(p) == pytest.approx(1.0, abs=1e-12)
        s = bloch_state(p)
        assert np.allclose(hopf_project(s.vector), p, atol=1e-10)
    # poles
    assert np.allclose(hopf_project([1.0, 0.0]), [0.0, 0.0, 1.0])
    assert np.allclose(bloch_state([0.0, 0.0, -1.0]).vector, [0.0, 1.0])


def test_hopf_project_validation():
    with pytest.raises(ValueError):
        hopf_project([1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        hopf_project([1.0, 1.0])
