"""Ready-made example geometries.

Small triples used throughout the tests and the command line: the
two-point space M_n(C) (+) C, the one-matrix-algebra triple on C^2 whose
state space is the Bloch sphere, commutative triples on weighted graphs,
and a minimal even triple for forming products.
"""
from __future__ import annotations

import math

import numpy as np

from .algebra import FiniteAlgebra, PureState, Representation, make_algebra
from .linalg import adjoint
from .triple import FiniteSpectralTriple

__all__ = [
    "two_point_triple",
    "two_point_scalar_state",
    "two_point_vector_state",
    "adapted_unitary",
    "m2_triple",
    "equatorial_state",
    "bloch_state",
    "random_commutative_triple",
    "basis_state",
    "one_point_even_triple",
]


def _column(m) -> np.ndarray:
    v = np.asarray(m, dtype=complex).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ValueError("coupling vector must be finite and nonempty")
    if np.linalg.norm(v) == 0:
        raise ValueError("coupling vector must be nonzero")
    return v


def _two_point_algebra(n: int) -> FiniteAlgebra:
    return make_algebra(("Mn", n, "a"), ("C", 1, "b"))


def _vec_embed(a: np.ndarray, lam: complex, n: int) -> np.ndarray:
    out = np.zeros((n + 1, n + 1), dtype=complex)
    out[:n, :n] = a
    out[n, n] = lam
    return out


def two_point_triple(m, representation: str = "matrix") -> FiniteSpectralTriple:
    """Two-sheet geometry over M_n(C) (+) C with coupling vector m in C^n.

    The vector representation acts on C^(n+1) and is the cheap one for
    distances; it is even but carries no real structure.  The matrix
    representation acts on M_(n+1)(C) by left multiplication, with J the
    adjoint and the grading psi -> K psi K, and satisfies the real axioms
    in KR-dimension 0.  Distances agree between the two.
    """
    v = _column(m)
    n = v.size
    algebra = _two_point_algebra(n)
    delta = np.zeros((n + 1, n + 1), dtype=complex)
    delta[:n, n] = v
    delta[n, :n] = np.conj(v)
    kappa = np.diag(np.concatenate([np.ones(n), [-1.0]])).astype(complex)

    if representation == "vector":
        images = [
            [_vec_embed(e, 0.0, n) for e in algebra.components[0].alg_basis],
            [_vec_embed(np.zeros((n, n)), e[0, 0], n) for e in algebra.components[1].alg_basis],
        ]
        rep = Representation(algebra=algebra, hilbert_dim=n + 1, images=images)
        return FiniteSpectralTriple(rep=rep, dirac=delta, grading=kappa,
                                    real_structure=None, kr_dim=0)

    if representation != "matrix":
        raise ValueError("representation must be 'matrix' or 'vector'")

    dim = (n + 1) ** 2
    eye = np.eye(n + 1)

    def left(x: np.ndarray) -> np.ndarray:
        # row-major vec: vec(X psi) = (X (x) I) vec(psi)
        return np.kron(x, eye)

    images = [
        [left(_vec_embed(e, 0.0, n)) for e in algebra.components[0].alg_basis],
        [left(_vec_embed(np.zeros((n, n)), e[0, 0], n)) for e in algebra.components[1].alg_basis],
    ]
    rep = Representation(algebra=algebra, hilbert_dim=dim, images=images)
    dirac = np.kron(delta, eye) + np.kron(eye, delta.T)
    grading = np.kron(kappa, kappa)
    # psi -> psi^dagger is U conj(.) with U the transposition permutation
    u_t = np.zeros((dim, dim))
    for i in range(n + 1):
        for j in range(n + 1):
            u_t[i * (n + 1) + j, j * (n + 1) + i] = 1.0
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=grading,
                                real_structure=u_t.astype(complex), kr_dim=0)


def two_point_scalar_state() -> PureState:
    """The state sitting on the C summand."""
    return PureState(1, np.array([1.0]))


def two_point_vector_state(xi) -> PureState:
    """Vector state of the matrix summand; xi is normalized."""
    v = np.asarray(xi, dtype=complex).ravel()
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("state vector must be nonzero")
    return PureState(0, v / nrm)


def adapted_unitary(m) -> np.ndarray:
    """A unitary sending e_1 to the direction of m."""
    v = _column(m)
    v = v / np.linalg.norm(v)
    n = v.size
    cols = [v]
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        for c in cols:
            e = e - c * np.vdot(c, e)
        nrm = np.linalg.norm(e)
        if nrm > 1e-8:
            cols.append(e / nrm)
        if len(cols) == n:
            break
    u = np.column_stack(cols)
    if np.linalg.norm(u @ adjoint(u) - np.eye(n)) > 1e-10:
        raise AssertionError("basis completion failed")
    return u


def m2_triple(d1: float, d2: float) -> FiniteSpectralTriple:
    """M_2(C) on C^2 with a diagonal Dirac; states form the Bloch sphere.

    Distances are finite only along circles of constant |xi_1| (fixed
    altitude on the sphere) when d1 != d2.
    """
    algebra = make_algebra(("Mn", 2, "a"))
    images = [list(algebra.components[0].alg_basis)]
    rep = Representation(algebra=algebra, hilbert_dim=2, images=images)
    dirac = np.diag([float(d1), float(d2)]).astype(complex)
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=None,
                                real_structure=None, kr_dim=1)


def equatorial_state(theta: float) -> PureState:
    """State at longitude theta on the equator of the Bloch sphere."""
    return PureState(0, np.array([1.0, np.exp(-1j * theta)]) / math.sqrt(2.0))


def bloch_state(p) -> PureState:
    """State whose sphere coordinates are the unit vector p = (x, y, z)."""
    x, y, z = (float(c) for c in p)
    r = math.sqrt(x * x + y * y + z * z)
    if abs(r - 1.0) > 1e-10:
        raise ValueError("sphere point must be a unit vector")
    if z <= -1.0 + 1e-15:
        return PureState(0, np.array([0.0, 1.0]))
    xi1 = math.sqrt((1.0 + z) / 2.0)
    xi2 = (x - 1j * y) / (2.0 * xi1)
    v = np.array([xi1, xi2])
    return PureState(0, v / np.linalg.norm(v))


def basis_state(t: FiniteSpectralTriple, k: int) -> PureState:
    """The pure state of the k-th C component of a commutative algebra."""
    comp = t.algebra.components[k]
    if comp.kind != "C":
        raise ValueError("basis_state needs a C component")
    return PureState(k, np.array([1.0]))


def random_commutative_triple(k: int, rng: np.random.Generator) -> FiniteSpectralTriple:
    """k one-dimensional sheets with a random hermitian coupling.

    The algebra is C^(+k) acting diagonally on C^k; distances reduce to a
    weighted-graph metric and are finite when the off-diagonal couplings
    connect every pair of sheets.
    """
    if k < 2:
        raise ValueError("need at least two sheets")
    algebra = make_algebra(*[("C", 1, f"s{i}") for i in range(k)])
    images = []
    for i in range(k):
        e = np.zeros((k, k), dtype=complex)
        e[i, i] = 1.0
        images.append([e, 1.0j * e])
    rep = Representation(algebra=algebra, hilbert_dim=k, images=images)
    g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    dirac = (g + adjoint(g)) / 2.0
    # a zero coupling would disconnect a pair of sheets
    dirac[np.abs(dirac) < 1e-3] += 0.1
    dirac = (dirac + adjoint(dirac)) / 2.0
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=None,
                                real_structure=None, kr_dim=1)


def one_point_even_triple(w: float = 1.0) -> FiniteSpectralTriple:
    """C on C^2 with an off-diagonal Dirac, the minimal even real triple.

    Its single point carries no metric information; the triple exists to be
    the external factor of graded products.
    """
    algebra = make_algebra(("C", 1, "pt"))
    images = [[np.eye(2, dtype=complex), 1.0j * np.eye(2, dtype=complex)]]
    rep = Representation(algebra=algebra, hilbert_dim=2, images=images)
    dirac = np.array([[0.0, float(w)], [float(w), 0.0]], dtype=complex)
    grading = np.diag([1.0, -1.0]).astype(complex)
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=grading,
                                real_structure=np.eye(2, dtype=complex), kr_dim=0)
