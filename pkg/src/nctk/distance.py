"""Spectral distance between states of a finite triple.

The distance between two states is the supremum of |tau1(a) - tau2(a)| over
self-adjoint algebra elements with ||[D, a]|| <= 1.  In self-adjoint
coordinates x this is the maximum of delta.x / sigma_max(Phi(x)), a
scale-free quasiconcave ratio.  Directions along which Phi vanishes either
leave the objective unchanged or make it unbounded, so the driver splits
them off first and optimizes on the orthogonal complement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _ascent_py
from ._backend import get_backend
from .algebra import PureState, hopf_project, state_functional_coords
from .linalg import commutator, dominant_singular_triple, operator_norm
from .triple import FiniteSpectralTriple

__all__ = [
    "SolverOptions",
    "DistanceResult",
    "ClosedFormNotApplicable",
    "commutator_stack",
    "commutator_kernel",
    "functional_coords",
    "is_infinite",
    "spectral_distance",
    "closed_form_m2",
    "closed_form_two_point",
]

INFINITE_PROJECTION_THRESHOLD = 1e-9


class ClosedFormNotApplicable(ValueError):
    """The requested pair of states is not covered by the closed form."""


@dataclass(frozen=True)
class SolverOptions:
    restarts: int = 16
    max_iterations: int = 5000
    tolerance: float = 1e-8
    kernel_tolerance: float = 1e-10
    seed: int = 42
    step0: float = 0.5
    grow: float = 1.3
    shrink: float = 0.5
    stall_window: int = 40
    power_iters: int = 8
    softmax_temperature: float = 1e-3
    backend: str | None = None

    def __post_init__(self):
        for name in ("restarts", "max_iterations", "tolerance", "kernel_tolerance",
                     "step0", "grow", "shrink", "stall_window", "power_iters",
                     "softmax_temperature"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class DistanceResult:
    value: float
    maximizer_coords: np.ndarray | None
    achieved_constraint: float
    restarts_used: int
    iterations: int
    converged: bool

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "achieved_constraint": self.achieved_constraint,
            "restarts_used": self.restarts_used,
            "iterations": self.iterations,
            "converged": self.converged,
            "infinite": self.is_infinite,
        }


def commutator_stack(triple: FiniteSpectralTriple) -> np.ndarray:
    """[D, pi(e_k)] for each self-adjoint basis element, stacked."""
    mats = [commutator(triple.dirac, img) for img in triple.rep.sa_images()]
    return np.stack(mats, axis=0)


def commutator_kernel(triple: FiniteSpectralTriple, *, tolerance: float = 1e-10):
    """Split sa coordinates into kernel and complement of x -> [D, pi(x)].

    Returns (kernel_rows, complement_rows), both orthonormal.  The
    singular-value cutoff is tolerance * ||D||, or absolute 1e-12 for D = 0.
    """
    stack = commutator_stack(triple)
    n = stack.shape[0]
    flat = stack.reshape(n, -1)
    mat = np.concatenate([flat.real, flat.imag], axis=1).T
    dirac_norm = operator_norm(triple.dirac)
    cutoff = tolerance * dirac_norm if dirac_norm > 0.0 else 1e-12
    if not np.any(np.abs(mat) > cutoff):
        return np.eye(n), np.zeros((0, n))
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.sum(s > cutoff))
    complement = vh[:rank]
    kernel = vh[rank:] if rank < n else np.zeros((0, n))
    return kernel, complement


def functional_coords(triple: FiniteSpectralTriple, state) -> np.ndarray:
    """Real coordinates of a state on the self-adjoint basis.

    Accepts a PureState or a precomputed coordinate vector.
    """
    if isinstance(state, PureState):
        return state_functional_coords(state, triple.rep)
    arr = np.asarray(state, dtype=float)
    if arr.shape != (triple.algebra.sa_dim,):
        raise ValueError(
            f"state coordinates must have length {triple.algebra.sa_dim}, got {arr.shape}")
    return arr


def is_infinite(triple: FiniteSpectralTriple, state1, state2, *,
                kernel_tolerance: float = 1e-10,
                threshold: float = INFINITE_PROJECTION_THRESHOLD) -> bool:
    """Whether the distance diverges.

    The supremum is finite exactly when the difference functional
    annihilates every direction with vanishing commutator, so this is a
    linear-algebra decision independent of the solver.
    """
    delta = functional_coords(triple, state1) - functional_coords(triple, state2)
    kernel, _ = commutator_kernel(triple, tolerance=kernel_tolerance)
    if kernel.shape[0] == 0:
        return False
    return float(np.linalg.norm(kernel @ delta)) > threshold


def _start_points(delta_hat: np.ndarray, restarts: int, rng: np.random.Generator) -> np.ndarray:
    """Sign-symmetric start set: swapping the two states mirrors every start."""
    r = delta_hat.shape[0]
    rows = [delta_hat, -delta_hat]
    pairs = max(0, (restarts - len(rows) + 1) // 2)
    for _ in range(pairs):
        g = rng.standard_normal(r)
        gn = np.linalg.norm(g)
        g = delta_hat if gn == 0.0 else g / gn
        rows.append(g)
        rows.append(-g)
    return np.stack(rows, axis=0)


def _certify(c_red: np.ndarray, d_red: np.ndarray, x: np.ndarray):
    """Scale x onto the constraint boundary and recompute everything exactly."""
    phi = np.einsum("b,bij->ij", x, c_red)
    sigma, _, _ = dominant_singular_triple(phi)
    x = x / sigma
    value = float(d_red @ x)
    achieved, _, _ = dominant_singular_triple(np.einsum("b,bij->ij", x, c_red))
    return value, x, achieved


def spectral_distance(triple: FiniteSpectralTriple, state1, state2,
                      options: SolverOptions | None = None) -> DistanceResult:
    """Distance between two states, with a certified maximizer.

    The returned value is a feasible lower bound: the maximizer coordinates
    (over the self-adjoint basis) satisfy the commutator constraint with
    equality up to roundoff.
    """
    opts = options or SolverOptions()
    delta = functional_coords(triple, state1) - functional_coords(triple, state2)
    if float(np.linalg.norm(delta)) == 0.0:
        return DistanceResult(0.0, None, 0.0, 0, 0, True)

    stack = commutator_stack(triple)
    kernel, complement = commutator_kernel(triple, tolerance=opts.kernel_tolerance)
    if kernel.shape[0] and \
            float(np.linalg.norm(kernel @ delta)) > INFINITE_PROJECTION_THRESHOLD:
        return DistanceResult(math.inf, None, 0.0, 0, 0, True)
    if complement.shape[0] == 0:
        return DistanceResult(0.0, None, 0.0, 0, 0, True)

    c_red = np.einsum("kb,bij->kij", complement, stack, optimize=True)
    d_red = complement @ delta
    r = d_red.shape[0]

    if r == 1:
        x = np.array([1.0 if d_red[0] >= 0 else -1.0])
        value, x, achieved = _certify(c_red, d_red, x)
        return DistanceResult(value, complement.T @ x, achieved, 1, 0, True)

    rng = np.random.default_rng(opts.seed)
    d_hat = d_red / np.linalg.norm(d_red)
    x = _start_points(d_hat, opts.restarts, rng)
    n_rows = x.shape[0]
    alpha = np.full(n_rows, opts.step0)
    total_iters = 0

    phase_budget = max(10, opts.max_iterations // 4)
    for temp in (opts.softmax_temperature, opts.softmax_temperature * 1e-2):
        x, alpha, best_x, _, used = _ascent_py.smooth_ascent(
            c_red, d_red, x, alpha, temp, phase_budget,
            opts.tolerance, opts.stall_window, opts.grow, opts.shrink)
        total_iters += used
        x = best_x
        alpha = np.maximum(alpha, opts.step0 * 1e-3)

    sigma, _, v, _ = _ascent_py.exact_top(c_red, x)
    sigma = np.where(sigma == 0.0, 1.0, sigma)
    x = x / sigma[:, None]
    best_f = d_red @ x.T
    best_x = x.copy()

    _, polish = get_backend(opts.backend)
    chunk = 200
    remaining = opts.max_iterations - 2 * phase_budget
    converged = False
    prev_best = float(np.max(best_f))
    while remaining > 0:
        n_iters = min(chunk, remaining)
        x, v, alpha, accepts, used = polish(
            c_red, d_red, x, v, alpha, n_iters, opts.power_iters, opts.grow, opts.shrink)
        total_iters += used
        remaining -= n_iters
        sigma, _, v, _ = _ascent_py.exact_top(c_red, x)
        sigma = np.where(sigma == 0.0, 1.0, sigma)
        x = x / sigma[:, None]
        f = d_red @ x.T
        improved = f > best_f
        best_f = np.where(improved, f, best_f)
        best_x[improved] = x[improved]
        cur_best = float(np.max(best_f))
        if accepts == 0 or cur_best - prev_best <= opts.tolerance * max(1.0, abs(cur_best)):
            converged = True
            break
        prev_best = cur_best

    winner = int(np.argmax(best_f))
    value, x_star, achieved = _certify(c_red, d_red, best_x[winner])
    return DistanceResult(value, complement.T @ x_star, achieved, n_rows,
                          total_iters, converged)


def closed_form_m2(d1: float, d2: float, xi, zeta, *, tol: float = 1e-12) -> float:
    """Distance between vector states of M2 with D = diag(d1, d2).

    Finite only between states at the same Hopf altitude, where it is the
    in-plane euclidean distance between the Hopf points divided by the
    eigenvalue gap.  Equal eigenvalues put all distinct states at infinity.
    """
    p = hopf_project(np.asarray(xi, dtype=complex))
    q = hopf_project(np.asarray(zeta, dtype=complex))
    if max(abs(p[0] - q[0]), abs(p[1] - q[1]), abs(p[2] - q[2])) <= tol:
        return 0.0
    if abs(p[2] - q[2]) > tol:
        return math.inf
    gap = abs(d1 - d2)
    if gap == 0.0:
        return math.inf
    return math.hypot(p[0] - q[0], p[1] - q[1]) / gap


def closed_form_two_point(m, state1, state2, *, tol: float = 1e-9) -> float:
    """Distances on the two-sheet space M_n(C) (+) C with mass vector m.

    States are "c" (the scalar sheet) or unit vectors written in the basis
    whose first axis points along m.  The scalar sheet is at finite
    distance only from the state along that axis, and two vector states
    are covered only when their off-axis parts agree up to one phase.
    """
    m = np.asarray(m, dtype=complex).reshape(-1)
    m_norm = float(np.linalg.norm(m))
    if m_norm == 0.0:
        raise ValueError("mass vector must be nonzero")

    def load(s):
        if isinstance(s, str):
            if s != "c":
                raise ValueError(f"unknown state spec {s!r}")
            return None
        vec = np.asarray(s, dtype=complex).reshape(-1)
        if vec.shape != m.shape:
            raise ValueError("vector states must match the mass vector length")
        if abs(float(np.linalg.norm(vec)) - 1.0) > 1e-9:
            raise ValueError("vector states must be unit vectors")
        return vec

    v1, v2 = load(state1), load(state2)
    if v1 is None and v2 is None:
        return 0.0
    if (v1 is None) != (v2 is None):
        vec = v2 if v1 is None else v1
        tail = float(np.linalg.norm(vec[1:]))
        return 1.0 / m_norm if tail <= tol else math.inf

    t1, t2 = v1[1:], v2[1:]
    n1, n2 = float(np.linalg.norm(t1)), float(np.linalg.norm(t2))
    if abs(n1 - n2) > tol:
        raise ClosedFormNotApplicable(
            "not covered by closed form: off-axis weights differ")
    if n1 > tol and abs(abs(np.vdot(t1, t2)) - n1 * n2) > tol * max(n1 * n2, 1.0):
        raise ClosedFormNotApplicable(
            "not covered by closed form: off-axis parts are not phase-proportional")
    overlap = min(abs(np.vdot(v1, v2)), 1.0)
    return (2.0 / m_norm) * math.sqrt(max(0.0, 1.0 - overlap * overlap))
