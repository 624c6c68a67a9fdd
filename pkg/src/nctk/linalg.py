"""Dense complex linear algebra helpers shared by the geometry modules.

Matrices are plain numpy arrays of dtype complex128.  Eigen and singular
value decompositions are delegated to LAPACK through numpy.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "as_complex_matrix",
    "adjoint",
    "commutator",
    "anticommutator",
    "hermitian_defect",
    "require_hermitian",
    "hermitian_eig",
    "operator_norm",
    "dominant_singular_triple",
    "antiunitary_apply",
    "antiunitary_sandwich",
    "require_unitary",
]


def as_complex_matrix(m) -> np.ndarray:
    """Coerce input to a 2-d complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={a.ndim}")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.swapaxes(m, -1, -2))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[a, b] = ab - ba for square matrices of equal shape."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """{a, b} = ab + ba."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"anticommutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b + b @ a


def hermitian_defect(m: np.ndarray) -> float:
    """Operator norm of m - m†."""
    m = as_complex_matrix(m)
    return operator_norm(m - adjoint(m))


def require_hermitian(m: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Return m unchanged if self-adjoint within tol relative to its scale."""
    m = as_complex_matrix(m)
    scale = max(1.0, operator_norm(m))
    defect = hermitian_defect(m)
    if defect > tol * scale:
        raise ValueError(f"matrix is not self-adjoint: defect {defect:.3e} exceeds {tol:.1e} * {scale:.3e}")
    return m


def hermitian_eig(m: np.ndarray, tol: float = 1e-12):
    """Eigendecomposition of a self-adjoint matrix.

    Returns (w, v) with eigenvalues w ascending and v[:, i] the i-th
    orthonormal eigenvector.  Raises ValueError if m is not self-adjoint
    within tol relative to its norm.
    """
    m = require_hermitian(m, tol)
    w, v = np.linalg.eigh(m)
    return w, v


def operator_norm(m: np.ndarray) -> float:
    """Largest singular value, computed from the top eigenvalue of m†m."""
    m = as_complex_matrix(m)
    if m.size == 0:
        return 0.0
    # work with the smaller Gram matrix
    if m.shape[0] <= m.shape[1]:
        g = m @ adjoint(m)
    else:
        g = adjoint(m) @ m
    w = np.linalg.eigvalsh(g)
    top = float(w[-1])
    return float(np.sqrt(max(top, 0.0)))


def dominant_singular_triple(m: np.ndarray):
    """Top singular value sigma with unit vectors (u, v) such that m v = sigma u.

    For a degenerate top singular value any maximizing pair is returned.
    Raises ValueError on the zero matrix.
    """
    m = as_complex_matrix(m)
    g = adjoint(m) @ m
    w, vecs = np.linalg.eigh(g)
    sigma = float(np.sqrt(max(float(w[-1]), 0.0)))
    if sigma == 0.0:
        raise ValueError("zero matrix has no dominant singular triple")
    v = vecs[:, -1]
    u = (m @ v) / sigma
    u = u / np.linalg.norm(u)
    return sigma, u, v


def require_unitary(u: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    u = as_complex_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got {u.shape}")
    defect = operator_norm(adjoint(u) @ u - np.eye(u.shape[0]))
    if defect > tol:
        raise ValueError(f"matrix is not unitary: defect {defect:.3e} exceeds {tol:.1e}")
    return u


def antiunitary_apply(u: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Apply the antiunitary J = U * complex conjugation to a vector."""
    u = require_unitary(u)
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (u.shape[0],):
        raise ValueError(f"vector shape {psi.shape} does not match operator dimension {u.shape[0]}")
    return u @ np.conj(psi)


def antiunitary_sandwich(u: np.ndarray, x: np.ndarray) -> np.ndarray:
    """J x J^{-1} = U conj(x) U† for the antiunitary J = U * conjugation."""
    return u @ np.conj(x) @ adjoint(u)
