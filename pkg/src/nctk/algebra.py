"""Finite-dimensional real *-algebras, their representations, and pure states.

A finite algebra is a direct sum of components of three kinds:

* ``C``   the complex numbers (one-dimensional matrices),
* ``H``   the quaternions, embedded as 2x2 complex matrices,
* ``Mn``  full complex n x n matrices.

Each component carries two canonical bases.  ``sa_basis`` spans the
self-adjoint part over the reals; spectral distance optimization runs over
these coordinates.  ``alg_basis`` extends it to a real basis of the full
component, appending an anti-self-adjoint completion.  Representations are
real-linear (conjugated actions are allowed), so images are stored for the
full basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import adjoint, operator_norm

__all__ = [
    "AlgebraComponent",
    "FiniteAlgebra",
    "Representation",
    "PureState",
    "make_component",
    "make_algebra",
    "state_eval",
    "state_functional_coords",
    "hopf_project",
]

KINDS = ("C", "H", "Mn")

_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def _mn_sa_basis(n: int) -> list[np.ndarray]:
    # diagonal units, then symmetric pairs, then antisymmetric pairs times i
    basis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            e[j, i] = 1.0
            basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = -1.0j
            e[j, i] = 1.0j
            basis.append(e)
    return basis


def _flatten_real(mats: Sequence[np.ndarray]) -> np.ndarray:
    rows = [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in mats]
    return np.array(rows)


@dataclass(frozen=True)
class AlgebraComponent:
    """One direct summand of a finite algebra."""

    label: str
    kind: str
    n: int
    sa_basis: tuple[np.ndarray, ...]
    alg_basis: tuple[np.ndarray, ...]
    sa_gram_condition: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown component kind {self.kind!r}")
        for e in self.sa_basis:
            if operator_norm(e - adjoint(e)) > 1e-12:
                raise ValueError(f"component {self.label}: sa_basis element is not self-adjoint")
        flat = _flatten_real(self.alg_basis)
        gram = flat @ flat.T
        cond = float(np.linalg.cond(gram))
        if not np.isfinite(cond) or cond > 1e12:
            raise ValueError(f"component {self.label}: basis is not real-linearly independent")
        object.__setattr__(self, "sa_gram_condition", cond)

    @property
    def sa_dim(self) -> int:
        return len(self.sa_basis)

    @property
    def alg_dim(self) -> int:
        return len(self.alg_basis)

    def element_from_coords(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.alg_dim,):
            raise ValueError(f"component {self.label}: expected {self.alg_dim} coordinates")
        out = np.zeros((self.n, self.n), dtype=complex)
        for c, e in zip(coords, self.alg_basis):
            out += c * e
        return out

    def coords_from_element(self, x: np.ndarray, tol: float = 1e-10) -> np.ndarray:
        """Real coordinates of x over alg_basis; errors if x is outside the component."""
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.n, self.n):
            raise ValueError(f"component {self.label}: expected a {self.n}x{self.n} matrix")
        flat = _flatten_real(self.alg_basis)
        target = np.concatenate([x.real.ravel(), x.imag.ravel()])
        coords, *_ = np.linalg.lstsq(flat.T, target, rcond=None)
        recon = self.element_from_coords(coords)
        scale = max(1.0, float(np.linalg.norm(x)))
        if np.linalg.norm(recon - x) > tol * scale:
            raise ValueError(f"component {self.label}: matrix is not an element of the component")
        return coords


def make_component(kind: str, n: int, label: str | None = None) -> AlgebraComponent:
    """Canonical component of the given kind.

    ``C`` requires n == 1, ``H`` requires n == 2 (quaternions as 2x2 complex
    matrices), ``Mn`` accepts any n >= 1.
    """
    if kind == "C":
        if n != 1:
            raise ValueError("kind C requires n == 1")
        sa = [np.array([[1.0 + 0.0j]])]
        alg = sa + [np.array([[1.0j]])]
    elif kind == "H":
        if n != 2:
            raise ValueError("kind H requires n == 2")
        sa = [np.eye(2, dtype=complex)]
        alg = sa + [1.0j * s for s in _SIGMA]
    elif kind == "Mn":
        if n < 1:
            raise ValueError("kind Mn requires n >= 1")
        sa = _mn_sa_basis(n)
        alg = sa + [1.0j * e for e in sa]
    else:
        raise ValueError(f"unknown component kind {kind!r}")
    if label is None:
        label = f"{kind}{n}"
    return AlgebraComponent(label=label, kind=kind, n=n,
                            sa_basis=tuple(sa), alg_basis=tuple(alg))


@dataclass(frozen=True)
class FiniteAlgebra:
    """Direct sum of components."""

    components: tuple[AlgebraComponent, ...]

    def __post_init__(self):
        if len(self.components) == 0:
            raise ValueError("algebra needs at least one component")
        labels = [c.label for c in self.components]
        if len(set(labels)) != len(labels):
            raise ValueError(f"component labels are not unique: {labels}")

    @property
    def sa_dim(self) -> int:
        return sum(c.sa_dim for c in self.components)

    @property
    def alg_dim(self) -> int:
        return sum(c.alg_dim for c in self.components)

    def sa_offset(self, k: int) -> int:
        return sum(c.sa_dim for c in self.components[:k])

    def alg_offset(self, k: int) -> int:
        return sum(c.alg_dim for c in self.components[:k])

    def sa_coords_to_alg(self, coords: np.ndarray) -> np.ndarray:
        """Embed self-adjoint coordinates into full-basis coordinates."""
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.sa_dim,):
            raise ValueError(f"expected {self.sa_dim} self-adjoint coordinates")
        out = np.zeros(self.alg_dim)
        for k, c in enumerate(self.components):
            out[self.alg_offset(k):self.alg_offset(k) + c.sa_dim] = \
                coords[self.sa_offset(k):self.sa_offset(k) + c.sa_dim]
        return out

    def element_matrices(self, coords: np.ndarray) -> list[np.ndarray]:
        """Per-component matrices of the element with the given full coordinates."""
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.alg_dim,):
            raise ValueError(f"expected {self.alg_dim} coordinates")
        return [c.element_from_coords(coords[self.alg_offset(k):self.alg_offset(k) + c.alg_dim])
                for k, c in enumerate(self.components)]

    def coords_from_matrices(self, mats: Sequence[np.ndarray | None], tol: float = 1e-10) -> np.ndarray:
        """Full coordinates of an element given per-component matrices (None means zero)."""
        if len(mats) != len(self.components):
            raise ValueError(f"expected {len(self.components)} component matrices")
        out = np.zeros(self.alg_dim)
        for k, (c, m) in enumerate(zip(self.components, mats)):
            if m is None:
                continue
            out[self.alg_offset(k):self.alg_offset(k) + c.alg_dim] = c.coords_from_element(m, tol)
        return out

    def unit_coords(self) -> np.ndarray:
        return self.coords_from_matrices([np.eye(c.n, dtype=complex) for c in self.components])


def make_algebra(*specs) -> FiniteAlgebra:
    """Build an algebra from (kind, n) or (kind, n, label) tuples."""
    comps = []
    for s in specs:
        comps.append(make_component(*s))
    return FiniteAlgebra(components=tuple(comps))


@dataclass(frozen=True)
class Representation:
    """Real-linear unital *-representation of a finite algebra.

    ``images[k][i]`` is the operator representing the i-th ``alg_basis``
    element of component k.  The first ``sa_dim`` entries of each list
    represent the self-adjoint basis.
    """

    algebra: FiniteAlgebra
    hilbert_dim: int
    images: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        if self.hilbert_dim < 1:
            raise ValueError("hilbert_dim must be positive")
        if len(self.images) != len(self.algebra.components):
            raise ValueError("one image list per component is required")
        for comp, imgs in zip(self.algebra.components, self.images):
            if len(imgs) != comp.alg_dim:
                raise ValueError(f"component {comp.label}: expected {comp.alg_dim} images, got {len(imgs)}")
            for i, m in enumerate(imgs):
                if m.shape != (self.hilbert_dim, self.hilbert_dim):
                    raise ValueError(f"component {comp.label}: image {i} has shape {m.shape}")
            for i in range(comp.sa_dim):
                if operator_norm(imgs[i] - adjoint(imgs[i])) > 1e-12 * max(1.0, operator_norm(imgs[i])):
                    raise ValueError(f"component {comp.label}: self-adjoint basis image {i} is not self-adjoint")
        unit = self.unit_image()
        if operator_norm(unit - np.eye(self.hilbert_dim)) > 1e-12:
            raise ValueError("representation is not unital: unit image differs from the identity")

    def sa_images(self) -> list[np.ndarray]:
        """Images of the global self-adjoint basis, in algebra order."""
        out = []
        for comp, imgs in zip(self.algebra.components, self.images):
            out.extend(imgs[:comp.sa_dim])
        return out

    def alg_images(self) -> list[np.ndarray]:
        out = []
        for imgs in self.images:
            out.extend(imgs)
        return out

    def unit_image(self) -> np.ndarray:
        return self.represent(self.algebra.unit_coords())

    def represent(self, coords: np.ndarray) -> np.ndarray:
        """Operator for full-basis coordinates."""
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.algebra.alg_dim,):
            raise ValueError(f"expected {self.algebra.alg_dim} coordinates")
        out = np.zeros((self.hilbert_dim, self.hilbert_dim), dtype=complex)
        i = 0
        for imgs in self.images:
            for m in imgs:
                if coords[i] != 0.0:
                    out += coords[i] * m
                i += 1
        return out

    def represent_sa(self, coords: np.ndarray) -> np.ndarray:
        """Operator for self-adjoint coordinates."""
        return self.represent(self.algebra.sa_coords_to_alg(coords))

    def represent_matrices(self, mats: Sequence[np.ndarray | None], tol: float = 1e-10) -> np.ndarray:
        return self.represent(self.algebra.coords_from_matrices(mats, tol))

    def multiplicativity_defect(self) -> float:
        """Worst deviation of pi(f g) from pi(f) pi(g) over all basis pairs.

        Products of basis elements from distinct components are zero in the
        algebra, so their images must annihilate each other.
        """
        worst = 0.0
        ncomp = len(self.algebra.components)
        for k in range(ncomp):
            comp_k = self.algebra.components[k]
            for l in range(ncomp):
                comp_l = self.algebra.components[l]
                for i, fi in enumerate(comp_k.alg_basis):
                    for j, gj in enumerate(comp_l.alg_basis):
                        prod_op = self.images[k][i] @ self.images[l][j]
                        if k == l:
                            coords = comp_k.coords_from_element(fi @ gj)
                            expected = np.zeros_like(prod_op)
                            for c, m in zip(coords, self.images[k]):
                                expected += c * m
                        else:
                            expected = 0.0
                        worst = max(worst, operator_norm(prod_op - expected))
        return worst

    def validate_multiplicative(self, tol: float = 1e-10) -> float:
        defect = self.multiplicativity_defect()
        scale = max(1.0, max(operator_norm(m) for m in self.alg_images()) ** 2)
        if defect > tol * scale:
            raise ValueError(f"representation is not multiplicative: defect {defect:.3e}")
        return defect


@dataclass(frozen=True)
class PureState:
    """Vector state of one component, the unit vector taken modulo phase.

    The phase is canonicalized so that the first nonvanishing entry is real
    and positive.
    """

    component_index: int
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.complex128).ravel()
        if v.ndim != 1 or v.size == 0:
            raise ValueError("state vector must be a nonempty 1-d array")
        nrm = float(np.linalg.norm(v))
        if abs(nrm - 1.0) > 1e-12:
            raise ValueError(f"state vector must be normalized, got norm {nrm!r}")
        for entry in v:
            if abs(entry) > 1e-14:
                phase = entry / abs(entry)
                v = v / phase
                break
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    def dim(self) -> int:
        return self.vector.size


def state_eval(state: PureState, a: np.ndarray) -> float:
    """Evaluate the state on a self-adjoint component element, <xi, a xi>."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (state.dim(), state.dim()):
        raise ValueError(f"element shape {a.shape} does not match state dimension {state.dim()}")
    val = complex(np.vdot(state.vector, a @ state.vector))
    if abs(val.imag) > 1e-12 * max(1.0, operator_norm(a)):
        raise ValueError("state evaluation is not real; element is not self-adjoint")
    return float(val.real)


def state_functional_coords(state: PureState, rep: Representation) -> np.ndarray:
    """Values of the state on every global self-adjoint basis element.

    Entries for components other than the state's own are zero.
    """
    algebra = rep.algebra
    if not 0 <= state.component_index < len(algebra.components):
        raise ValueError(f"component index {state.component_index} out of range")
    comp = algebra.components[state.component_index]
    if state.dim() != comp.n:
        raise ValueError(f"state dimension {state.dim()} does not match component size {comp.n}")
    out = np.zeros(algebra.sa_dim)
    off = algebra.sa_offset(state.component_index)
    for i, e in enumerate(comp.sa_basis):
        out[off + i] = state_eval(state, e)
    return out


def hopf_project(xi: np.ndarray) -> np.ndarray:
    """Coordinates on the unit 2-sphere of a unit vector in C^2.

    Returns (x, y, z) with x = 2 Re(xi1 conj(xi2)), y = 2 Im(xi1 conj(xi2)),
    z = |xi1|^2 - |xi2|^2.
    """
    xi = np.asarray(xi, dtype=complex).ravel()
    if xi.shape != (2,):
        raise ValueError("hopf_project expects a vector in C^2")
    if abs(np.linalg.norm(xi) - 1.0) > 1e-10:
        raise ValueError("hopf_project expects a unit vector")
    cross = xi[0] * np.conj(xi[1])
    return np.array([2.0 * cross.real, 2.0 * cross.imag,
                     abs(xi[0]) ** 2 - abs(xi[1]) ** 2])
