"""Finite spectral triples and their axiom checks.

A triple bundles a represented finite algebra with a self-adjoint Dirac
operator, an optional grading, and an optional real structure J = U * conj
classified by a KR dimension mod 8.  Checks return structured results with
worst-case operator-norm residuals, so a report can be rendered or
serialized without re-running anything.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import FiniteAlgebra, Representation
from .linalg import (adjoint, antiunitary_sandwich, anticommutator, as_complex_matrix,
                     commutator, operator_norm, require_hermitian, require_unitary)

__all__ = [
    "KR_SIGNS",
    "AxiomCheck",
    "AxiomReport",
    "FiniteSpectralTriple",
    "check_grading",
    "check_reality_signs",
    "check_zeroth_order",
    "check_first_order",
    "check_orientability",
    "run_all_checks",
    "intersection_matrix",
    "check_poincare",
    "integer_det",
    "product_triple",
]

# KR dimension mod 8 -> (sign of J^2, sign in J D = +/- D J, sign in J G = +/- G J).
# The grading sign is None in odd dimensions.
KR_SIGNS: dict[int, tuple[int, int, int | None]] = {
    0: (+1, +1, +1),
    1: (+1, -1, None),
    2: (-1, +1, -1),
    3: (-1, +1, None),
    4: (-1, +1, +1),
    5: (-1, -1, None),
    6: (+1, +1, -1),
    7: (+1, +1, None),
}

STRUCTURAL_TOL = 1e-10
LSQ_TOL = 1e-8


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    residual: float
    tolerance: float
    witness: str | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "residual": self.residual,
                "tolerance": self.tolerance, "witness": self.witness}


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"all_passed": self.all_passed, "checks": [c.to_dict() for c in self.checks]}

    def __iter__(self):
        return iter(self.checks)


@dataclass(frozen=True)
class FiniteSpectralTriple:
    """Represented algebra, Dirac operator, optional grading and real structure.

    grading is either a self-adjoint involution commuting with the algebra,
    or None for an odd triple (the grading is then implicitly the identity
    and the anticommutation requirement is vacuous).  real_structure is the
    unitary U of the antiunitary J = U * conj, or None.
    """

    rep: Representation
    dirac: np.ndarray
    grading: np.ndarray | None = None
    real_structure: np.ndarray | None = None
    kr_dim: int = 0

    def __post_init__(self):
        d = self.rep.hilbert_dim
        dirac = as_complex_matrix(self.dirac)
        if dirac.shape != (d, d):
            raise ValueError(f"dirac shape {dirac.shape} does not match hilbert dimension {d}")
        require_hermitian(dirac, 1e-12)
        object.__setattr__(self, "dirac", dirac)
        if not 0 <= self.kr_dim <= 7:
            raise ValueError("kr_dim must lie in 0..7")
        if self.grading is not None:
            g = as_complex_matrix(self.grading)
            if g.shape != (d, d):
                raise ValueError("grading shape does not match hilbert dimension")
            require_hermitian(g, STRUCTURAL_TOL)
            if operator_norm(g @ g - np.eye(d)) > STRUCTURAL_TOL:
                raise ValueError("grading is not an involution")
            object.__setattr__(self, "grading", g)
        if self.real_structure is not None:
            u = require_unitary(self.real_structure)
            if u.shape != (d, d):
                raise ValueError("real structure shape does not match hilbert dimension")
            object.__setattr__(self, "real_structure", u)

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.rep.algebra

    @property
    def hilbert_dim(self) -> int:
        return self.rep.hilbert_dim

    @property
    def is_even(self) -> bool:
        return self.grading is not None

    def grading_matrix(self) -> np.ndarray:
        if self.grading is not None:
            return self.grading
        return np.eye(self.hilbert_dim, dtype=complex)

    def conjugate(self, x: np.ndarray) -> np.ndarray:
        """J x J^{-1} for the triple's real structure."""
        if self.real_structure is None:
            raise ValueError("triple has no real structure")
        return antiunitary_sandwich(self.real_structure, x)


def check_grading(t: FiniteSpectralTriple, tol: float = STRUCTURAL_TOL) -> AxiomCheck:
    """Grading squares to one, commutes with the algebra, anticommutes with D.

    Odd triples (no grading) pass trivially.
    """
    if t.grading is None:
        return AxiomCheck("grading", True, 0.0, tol, witness="odd triple, grading is trivial")
    g = t.grading
    d = t.hilbert_dim
    res = operator_norm(g @ g - np.eye(d))
    for m in t.rep.alg_images():
        res = max(res, operator_norm(commutator(g, m)))
    res = max(res, operator_norm(anticommutator(g, t.dirac)))
    return AxiomCheck("grading", res <= tol, res, tol)


def check_reality_signs(t: FiniteSpectralTriple, tol: float = STRUCTURAL_TOL) -> list[AxiomCheck]:
    """Sign table of the real structure for the triple's KR dimension.

    Checks J^2 = eps, J D = eps' D J and, in even dimensions, J G = eps'' G J.
    For J = U * conj these read U conj(U) = eps, U conj(D) = eps' D U and
    U conj(G) = eps'' G U.
    """
    if t.real_structure is None:
        raise ValueError("triple has no real structure")
    u = t.real_structure
    d = t.hilbert_dim
    eps, eps_d, eps_g = KR_SIGNS[t.kr_dim]
    out = []
    res = operator_norm(u @ np.conj(u) - eps * np.eye(d))
    out.append(AxiomCheck("reality-j-squared", res <= tol, res, tol,
                          witness=f"expected J^2 = {eps:+d}"))
    res = operator_norm(u @ np.conj(t.dirac) - eps_d * t.dirac @ u)
    out.append(AxiomCheck("reality-j-dirac", res <= tol, res, tol,
                          witness=f"expected J D = {eps_d:+d} D J"))
    if eps_g is not None:
        g = t.grading_matrix()
        res = operator_norm(u @ np.conj(g) - eps_g * g @ u)
        out.append(AxiomCheck("reality-j-grading", res <= tol, res, tol,
                              witness=f"expected J G = {eps_g:+d} G J"))
    return out


def _opposite_images(t: FiniteSpectralTriple) -> list[np.ndarray]:
    return [t.conjugate(m) for m in t.rep.alg_images()]


def check_zeroth_order(t: FiniteSpectralTriple, tol: float = STRUCTURAL_TOL) -> AxiomCheck:
    """[a, J b J^{-1}] = 0 over all pairs from the full real basis.

    Real bilinearity makes the basis check equivalent to the condition on
    arbitrary algebra elements.
    """
    if t.real_structure is None:
        raise ValueError("triple has no real structure")
    imgs = t.rep.alg_images()
    opp = _opposite_images(t)
    res = 0.0
    for a in imgs:
        for b in opp:
            res = max(res, operator_norm(commutator(a, b)))
    return AxiomCheck("zeroth-order", res <= tol, res, tol)


def check_first_order(t: FiniteSpectralTriple, tol: float = STRUCTURAL_TOL) -> AxiomCheck:
    """[[D, a], J b J^{-1}] = 0 over all pairs from the full real basis."""
    if t.real_structure is None:
        raise ValueError("triple has no real structure")
    imgs = t.rep.alg_images()
    opp = _opposite_images(t)
    res = 0.0
    for a in imgs:
        da = commutator(t.dirac, a)
        for b in opp:
            res = max(res, operator_norm(commutator(da, b)))
    return AxiomCheck("first-order", res <= tol, res, tol)


def _orientability_residual(t: FiniteSpectralTriple, left: list[np.ndarray],
                            right: list[np.ndarray]) -> tuple[float, np.ndarray]:
    """Least-squares fit of the grading by sums a J b J^{-1} over basis pairs."""
    d = t.hilbert_dim
    target = t.grading_matrix().ravel()
    cols = []
    for a in left:
        for b in right:
            cols.append((a @ b).ravel())
    mat = np.array(cols).T  # (d^2, pairs)
    real_mat = np.vstack([mat.real, mat.imag])
    real_target = np.concatenate([target.real, target.imag])
    coeffs, *_ = np.linalg.lstsq(real_mat, real_target, rcond=None)
    resid = float(np.linalg.norm(real_mat @ coeffs - real_target))
    return resid, coeffs


def check_orientability(t: FiniteSpectralTriple, tol: float = LSQ_TOL) -> AxiomCheck:
    """The grading is a combination sum c_ab pi(a) J pi(b) J^{-1}.

    Solved by least squares over real coefficients indexed by basis pairs;
    the residual is reported relative to the Frobenius norm of the grading.
    Self-adjoint pairs are tried first, the full real basis only when needed.
    """
    if t.real_structure is None:
        raise ValueError("triple has no real structure")
    scale = float(np.linalg.norm(t.grading_matrix()))
    sa = t.rep.sa_images()
    opp_sa = [t.conjugate(m) for m in sa]
    resid, coeffs = _orientability_residual(t, sa, opp_sa)
    basis_used = "self-adjoint"
    if resid / scale > tol:
        imgs = t.rep.alg_images()
        resid, coeffs = _orientability_residual(t, imgs, _opposite_images(t))
        basis_used = "full"
    rel = resid / scale
    witness = f"{basis_used} basis pairs, {int(np.sum(np.abs(coeffs) > 1e-8))} nonzero coefficients"
    return AxiomCheck("orientability", rel <= tol, rel, tol, witness=witness)


def _auto_conditions() -> list[AxiomCheck]:
    note = "finite-dimensional triple: holds automatically (spectral dimension 0)"
    return [AxiomCheck(name, True, 0.0, 0.0, witness=note)
            for name in ("dimension", "regularity", "finiteness")]


def run_all_checks(t: FiniteSpectralTriple) -> AxiomReport:
    """Run every axiom check that needs no extra input.

    Poincare duality needs a choice of projectors and is exposed separately
    through intersection_matrix and check_poincare.
    """
    checks: list[AxiomCheck] = list(_auto_conditions())
    checks.append(check_grading(t))
    if t.real_structure is not None:
        checks.extend(check_reality_signs(t))
        checks.append(check_zeroth_order(t))
        checks.append(check_first_order(t))
        checks.append(check_orientability(t))
    return AxiomReport(tuple(checks))


def intersection_matrix(t: FiniteSpectralTriple, projectors: Sequence[Sequence[np.ndarray | None]],
                        tol: float = 1e-8) -> np.ndarray:
    """Integer matrix of pairings Tr(G pi(p_i) J pi(p_j) J^{-1}).

    Each projector is given as per-component matrices (None meaning zero)
    and must be idempotent and self-adjoint within 1e-10.  Entries must land
    within tol of integers; the rounded integer matrix is returned.
    """
    if t.real_structure is None:
        raise ValueError("triple has no real structure")
    reps = []
    for p in projectors:
        coords = t.algebra.coords_from_matrices(p)
        mats = t.algebra.element_matrices(coords)
        for comp, m in zip(t.algebra.components, mats):
            if operator_norm(m - adjoint(m)) > 1e-10 or operator_norm(m @ m - m) > 1e-10:
                raise ValueError(f"projector is not a self-adjoint idempotent in component {comp.label}")
        reps.append(t.rep.represent(coords))
    g = t.grading_matrix()
    n = len(reps)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            val = complex(np.trace(g @ reps[i] @ t.conjugate(reps[j])))
            if abs(val.imag) > tol or abs(val.real - round(val.real)) > tol:
                raise ValueError(f"pairing ({i},{j}) = {val} is not within {tol:.1e} of an integer")
            out[i, j] = round(val.real)
    return out.astype(int)


def integer_det(mat: np.ndarray) -> int:
    """Exact determinant of a small integer matrix by cofactor expansion."""
    m = [[int(x) for x in row] for row in np.asarray(mat)]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("integer_det expects a square matrix")
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        total += (-1) ** j * m[0][j] * integer_det(np.array(minor))
    return total


def check_poincare(mat: np.ndarray, tol: float = 0.5) -> AxiomCheck:
    """Nondegeneracy of an integer intersection form.

    Passes when |det| >= tol (the determinant of an integer matrix is an
    integer, so 0.5 separates zero from nonzero exactly).
    """
    det = integer_det(mat)
    return AxiomCheck("poincare-duality", abs(det) >= tol, float(abs(det)), tol,
                      witness=f"det = {det}")


def product_triple(te: FiniteSpectralTriple, ti: FiniteSpectralTriple) -> FiniteSpectralTriple:
    """Graded tensor product with Dirac D_E x 1 + G_E x D_I.

    One factor's algebra must be a single C component; the product algebra
    is then identified with the other factor's algebra.  The external factor
    te must be even.
    """
    if te.grading is None:
        raise ValueError("external factor must be even (needs a grading)")

    def is_scalar(t: FiniteSpectralTriple) -> bool:
        comps = t.algebra.components
        return len(comps) == 1 and comps[0].kind == "C"

    if is_scalar(te):
        carrier, scalar_side = ti, "left"
    elif is_scalar(ti):
        carrier, scalar_side = te, "right"
    else:
        raise ValueError("one factor must have algebra C for the product")

    de, di = te.dirac, ti.dirac
    ge = te.grading
    dim_e, dim_i = te.hilbert_dim, ti.hilbert_dim
    dirac = np.kron(de, np.eye(dim_i)) + np.kron(ge, di)

    images = []
    for comp_imgs in carrier.rep.images:
        if scalar_side == "left":
            images.append(tuple(np.kron(np.eye(dim_e), m) for m in comp_imgs))
        else:
            images.append(tuple(np.kron(m, np.eye(dim_i)) for m in comp_imgs))
    rep = Representation(algebra=carrier.algebra, hilbert_dim=dim_e * dim_i, images=tuple(images))

    grading = None
    if ti.grading is not None:
        grading = np.kron(ge, ti.grading)
    real = None
    if te.real_structure is not None and ti.real_structure is not None:
        real = np.kron(te.real_structure, ti.real_structure)
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=grading,
                                real_structure=real, kr_dim=(te.kr_dim + ti.kr_dim) % 8)
