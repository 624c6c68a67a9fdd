"""Distance solver against closed forms and frozen high-accuracy references.

The frozen constants were produced by an independent semidefinite
formulation of the same supremum (interior-point, duality gap < 1e-9)
and by hand-checkable certificates; they are not outputs of the solver
under test.
"""

import math

import numpy as np
import pytest

from nctk.algebra import PureState
from nctk.distance import (
    ClosedFormNotApplicable,
    DistanceResult,
    SolverOptions,
    closed_form_m2,
    closed_form_two_point,
    commutator_kernel,
    is_infinite,
    spectral_distance,
)
from nctk.models import (
    adapted_unitary,
    basis_state,
    bloch_state,
    equatorial_state,
    m2_triple,
    random_commutative_triple,
    two_point_scalar_state,
    two_point_triple,
    two_point_vector_state,
)

# reference value for m = [1.5, 0.9-0.4j, 0.2j] and the phase-twisted pair below;
# independent SDP gives 0.6702294135835944 (agrees to 1.4e-11)
TAIL_PHASE_REFERENCE = 0.6702294135697315

# reference for D = diag(-0.3, 1.1) between the same-altitude Bloch points below;
# the exact value is 1.08 * sqrt(2) / 1.4, independent SDP gives 1.090964748333092
M2_PAIR_REFERENCE = 1.0909647481163876


def solve(t, s1, s2, **kw):
    return spectral_distance(t, s1, s2, SolverOptions(**kw) if kw else None)


# ---------------------------------------------------------------- two-point


@pytest.mark.parametrize("representation", ["vector", "matrix"])
@pytest.mark.parametrize("m", [
    [2.0],
    [1.0, 1.0j],
    [0.3, -0.4, 1.2j],
])
def test_scalar_to_aligned_state_is_reciprocal_mass(m, representation):
    t = two_point_triple(m, representation=representation)
    aligned = two_point_vector_state(np.asarray(m, dtype=complex))
    res = solve(t, aligned, two_point_scalar_state())
    assert res.value == pytest.approx(1.0 / np.linalg.norm(m), rel=1e-9)
    assert res.converged


def test_representations_agree_on_generic_pair():
    m = [1.1, 0.2 - 0.7j]
    u = adapted_unitary(m)
    s1 = two_point_vector_state(u @ np.array([0.8, 0.6]))
    s2 = two_point_vector_state(u @ np.array([0.8, -0.6]))
    vals = [solve(two_point_triple(m, representation=r), s1, s2).value
            for r in ("vector", "matrix")]
    assert math.isfinite(vals[0]) and vals[0] > 0.0
    assert vals[0] == pytest.approx(vals[1], rel=1e-8)


def test_misaligned_basis_state_is_infinite():
    t = two_point_triple([1.0, 1.0], representation="vector")
    e1 = two_point_vector_state([1.0, 0.0])
    sc = two_point_scalar_state()
    assert is_infinite(t, e1, sc)
    res = solve(t, e1, sc)
    assert res.value == math.inf
    assert res.is_infinite


def test_tail_phase_pair_matches_reference():
    m = np.array([1.5, 0.9 - 0.4j, 0.2j])
    c = 0.7
    s = math.sqrt(1.0 - c * c)
    tail = np.array([0.6, 0.8j])
    a1 = np.concatenate([[c], s * tail])
    a2 = np.concatenate([[c * np.exp(0.9j)], s * tail * np.exp(-0.4j)])

    value = closed_form_two_point(m, a1, a2)
    assert value == pytest.approx(TAIL_PHASE_REFERENCE, rel=1e-12)

    u = adapted_unitary(m)
    t = two_point_triple(m, representation="vector")
    res = solve(t, two_point_vector_state(u @ a1), two_point_vector_state(u @ a2))
    assert res.value == pytest.approx(TAIL_PHASE_REFERENCE, rel=1e-7)


def test_closed_form_two_point_branches():
    m = [3.0, 4.0]
    assert closed_form_two_point(m, "c", "c") == 0.0
    assert closed_form_two_point(m, "c", [1.0, 0.0]) == pytest.approx(0.2)
    assert closed_form_two_point(m, [1.0, 0.0], "c") == pytest.approx(0.2)
    # any off-axis weight on one side of the scalar pairing diverges
    assert closed_form_two_point(m, "c", [0.6, 0.8]) == math.inf
    # orthogonal states on the sphere through the axis
    v = 1.0 / math.sqrt(2.0)
    assert closed_form_two_point(m, [v, v], [v, -v]) == pytest.approx(0.4)
    with pytest.raises(ValueError):
        closed_form_two_point([0.0], "c", "c")
    with pytest.raises(ValueError):
        closed_form_two_point(m, "q", "c")
    with pytest.raises(ValueError):
        closed_form_two_point(m, [1.0, 0.0, 0.0], "c")
    with pytest.raises(ValueError):
        closed_form_two_point(m, [1.0, 1.0], "c")


def test_closed_form_two_point_rejections():
    m = [1.0, 0.0, 0.0]
    with pytest.raises(ClosedFormNotApplicable, match="off-axis weights differ"):
        closed_form_two_point(m, [1.0, 0.0, 0.0], [0.6, 0.8, 0.0])
    with pytest.raises(ClosedFormNotApplicable, match="not phase-proportional"):
        closed_form_two_point(m, [0.6, 0.8, 0.0], [0.6, 0.0, 0.8])


# ---------------------------------------------------------------------- M2


def test_m2_pair_matches_reference():
    p1 = (0.48, -0.6, 0.64)
    p2 = (-0.6, 0.48, 0.64)
    value = closed_form_m2(-0.3, 1.1, bloch_state(p1).vector, bloch_state(p2).vector)
    assert value == pytest.approx(M2_PAIR_REFERENCE, rel=1e-12)
    assert value == pytest.approx(1.08 * math.sqrt(2.0) / 1.4, rel=1e-12)

    t = m2_triple(-0.3, 1.1)
    res = solve(t, bloch_state(p1), bloch_state(p2))
    assert res.value == pytest.approx(M2_PAIR_REFERENCE, rel=1e-7)


def test_m2_antipodal_equatorial_distance():
    # certificate: a = [[0,1],[1,0]] has ||[D, a]|| = |d1 - d2| and separates
    # the antipodal equatorial states by 2, so the supremum is 2 / |d1 - d2|
    value = closed_form_m2(0.0, 1.0, equatorial_state(0.0).vector,
                           equatorial_state(math.pi).vector)
    assert value == pytest.approx(2.0, rel=1e-12)
    t = m2_triple(0.0, 1.0)
    res = solve(t, equatorial_state(0.0), equatorial_state(math.pi))
    assert res.value == pytest.approx(2.0, rel=1e-7)


def test_m2_closed_form_branches():
    xi = equatorial_state(0.3).vector
    zeta = equatorial_state(1.9).vector
    assert closed_form_m2(0.0, 1.0, xi, xi) == 0.0
    assert closed_form_m2(0.5, 0.5, xi, xi) == 0.0
    assert closed_form_m2(0.5, 0.5, xi, zeta) == math.inf
    # distinct altitudes
    assert closed_form_m2(0.0, 1.0, np.array([1.0, 0.0]), xi) == math.inf


def test_m2_solver_agrees_with_closed_form_sample():
    rng = np.random.default_rng(404)
    worst = 0.0
    for _ in range(50):
        d1, d2 = sorted(rng.uniform(-2.0, 2.0, size=2))
        if d2 - d1 < 0.1:
            d2 = d1 + 0.1
        z = rng.uniform(-0.85, 0.85)
        r = math.sqrt(1.0 - z * z)
        ang = rng.uniform(0.0, 2.0 * math.pi, size=2)
        p1 = (r * math.cos(ang[0]), r * math.sin(ang[0]), z)
        p2 = (r * math.cos(ang[1]), r * math.sin(ang[1]), z)
        s1, s2 = bloch_state(p1), bloch_state(p2)
        expected = closed_form_m2(d1, d2, s1.vector, s2.vector)
        got = spectral_distance(m2_triple(d1, d2), s1, s2).value
        if expected == 0.0:
            assert got <= 1e-8
            continue
        worst = max(worst, abs(got - expected) / expected)
    assert worst <= 1e-4, worst


# ------------------------------------------------------------------ solver


def test_identical_states_give_zero():
    t = m2_triple(0.0, 1.0)
    s = equatorial_state(0.7)
    res = solve(t, s, s)
    assert res.value == 0.0
    assert res.converged
    assert res.iterations == 0


def test_symmetry_under_state_swap():
    m = [1.0, 0.5j, -0.2]
    t = two_point_triple(m, representation="vector")
    u = adapted_unitary(m)
    s1 = two_point_vector_state(u @ np.array([0.6, 0.8, 0.0]))
    s2 = two_point_vector_state(u @ np.array([0.6, 0.8j, 0.0]))
    a = solve(t, s1, s2).value
    b = solve(t, s2, s1).value
    assert math.isfinite(a) and a > 0.0
    assert abs(a - b) <= 1e-12 * max(1.0, a)


def test_dirac_scaling_inverts_distance():
    m = [0.7, 1.3j]
    t1 = two_point_triple(m, representation="vector")
    c = 3.7
    t2 = two_point_triple([c * x for x in m], representation="vector")
    s1 = two_point_vector_state(np.asarray(m))
    s2 = two_point_scalar_state()
    d1 = solve(t1, s1, s2).value
    d2 = solve(t2, s1, s2).value
    assert d2 == pytest.approx(d1 / c, rel=1e-9)


def test_zero_dirac_means_infinite_or_zero():
    t = m2_triple(0.0, 0.0)
    s1, s2 = equatorial_state(0.0), equatorial_state(2.0)
    assert solve(t, s1, s2).value == math.inf
    assert solve(t, s1, s1).value == 0.0


def test_result_invariants_on_finite_pair():
    t = m2_triple(-0.3, 1.1)
    res = solve(t, bloch_state((0.48, -0.6, 0.64)), bloch_state((-0.6, 0.48, 0.64)))
    assert isinstance(res, DistanceResult)
    assert res.value >= 0.0
    assert abs(res.achieved_constraint - 1.0) <= 1e-9
    assert res.maximizer_coords is not None
    assert res.restarts_used >= 2
    d = res.to_dict()
    assert d["infinite"] is False and d["value"] == res.value


def test_commutator_kernel_structure():
    t = m2_triple(0.0, 1.0)
    kernel, complement = commutator_kernel(t)
    r = kernel.shape[0] + complement.shape[0]
    assert r == t.algebra.sa_dim
    basis = np.vstack([kernel, complement])
    assert np.allclose(basis @ basis.T, np.eye(r), atol=1e-10)

    flat = m2_triple(0.0, 0.0)
    kernel, complement = commutator_kernel(flat)
    assert complement.shape[0] == 0
    assert kernel.shape == (flat.algebra.sa_dim, flat.algebra.sa_dim)


def test_triangle_inequality_on_random_sheets():
    rng = np.random.default_rng(2024)
    for _ in range(10):
        t = random_commutative_triple(4, rng)
        states = [basis_state(t, k) for k in range(4)]
        d01 = solve(t, states[0], states[1]).value
        d12 = solve(t, states[1], states[2]).value
        d02 = solve(t, states[0], states[2]).value
        assert d02 <= d01 + d12 + 1e-6


def test_solver_options_validation():
    with pytest.raises(ValueError):
        SolverOptions(restarts=0)
    with pytest.raises(ValueError):
        SolverOptions(tolerance=-1.0)
    with pytest.raises(ValueError):
        SolverOptions(max_iterations=0)


def test_semidefinite_cross_check_m2():
    cp = pytest.importorskip("cvxpy")
    t = m2_triple(-0.3, 1.1)
    s1 = bloch_state((0.48, -0.6, 0.64))
    s2 = bloch_state((-0.6, 0.48, 0.64))
    from nctk.distance import commutator_stack, functional_coords

    delta = functional_coords(t, s1) - functional_coords(t, s2)
    stack = commutator_stack(t)
    w = cp.Variable(delta.shape[0])
    # real embedding [[Re, -Im], [Im, Re]] keeps the spectral norm
    re = sum(w[i] * stack[i].real for i in range(delta.shape[0]))
    im = sum(w[i] * stack[i].imag for i in range(delta.shape[0]))
    phi = cp.bmat([[re, -im], [im, re]])
    prob = cp.Problem(cp.Maximize(delta @ w), [cp.sigma_max(phi) <= 1.0])
    try:
        prob.solve(solver=cp.SCS, eps=1e-8)
    except cp.error.SolverError:
        prob.solve()
    assert prob.value == pytest.approx(M2_PAIR_REFERENCE, rel=1e-5)
