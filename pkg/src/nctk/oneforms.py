"""One-forms, gauge potentials, and fluctuations of the Dirac operator.

A one-form is a finite sum pi(a^i) [D, pi(b_i)] with algebra elements a^i,
b_i kept alongside the assembled operator, so every object here can be
rebuilt from its terms.  Gauge potentials are self-adjoint one-forms; the
covariant Dirac operator adds the potential together with its mirror under
the real structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import adjoint, antiunitary_sandwich, commutator, operator_norm
from .triple import FiniteSpectralTriple

__all__ = [
    "OneForm",
    "GaugePotential",
    "one_form",
    "one_form_basis",
    "span_residual",
    "covariant_dirac",
    "gauge_transform",
    "scalar_fluctuation",
]


@dataclass(frozen=True)
class OneForm:
    """Sum of terms pi(a^i) [D, pi(b_i)], with coordinates over the full basis."""

    terms: tuple[tuple[np.ndarray, np.ndarray], ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))


@dataclass(frozen=True)
class GaugePotential:
    """Self-adjoint one-form."""

    oneform: OneForm

    def __post_init__(self):
        m = self.oneform.matrix
        if operator_norm(m - adjoint(m)) > 1e-10 * max(1.0, operator_norm(m)):
            raise ValueError("gauge potential must be self-adjoint")

    @property
    def matrix(self) -> np.ndarray:
        return self.oneform.matrix


def _term_coords(t: FiniteSpectralTriple, spec) -> np.ndarray:
    """Accept full coordinates or per-component matrices for a term entry."""
    alg = t.algebra
    if isinstance(spec, (list, tuple)) and len(spec) == len(alg.components) and \
            all(s is None or isinstance(s, np.ndarray) for s in spec):
        return alg.coords_from_matrices(spec)
    coords = np.asarray(spec, dtype=float)
    if coords.shape != (alg.alg_dim,):
        raise ValueError(f"term expects {alg.alg_dim} coordinates or per-component matrices")
    return coords


def one_form(t: FiniteSpectralTriple, terms: Iterable[tuple]) -> OneForm:
    """Assemble sum pi(a^i) [D, pi(b_i)] from (a, b) pairs."""
    stored = []
    total = np.zeros((t.hilbert_dim, t.hilbert_dim), dtype=complex)
    for a_spec, b_spec in terms:
        a = _term_coords(t, a_spec)
        b = _term_coords(t, b_spec)
        total += t.rep.represent(a) @ commutator(t.dirac, t.rep.represent(b))
        stored.append((a, b))
    form = OneForm(terms=tuple(stored), matrix=total)
    rebuilt = reproduce_matrix(t, form)
    if operator_norm(rebuilt - form.matrix) > 1e-12 * max(1.0, operator_norm(form.matrix)):
        raise ValueError("one-form matrix is not reproducible from its terms")
    return form


def reproduce_matrix(t: FiniteSpectralTriple, form: OneForm) -> np.ndarray:
    total = np.zeros((t.hilbert_dim, t.hilbert_dim), dtype=complex)
    for a, b in form.terms:
        total += t.rep.represent(a) @ commutator(t.dirac, t.rep.represent(b))
    return total


def _sa_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + adjoint(m))


def one_form_basis(t: FiniteSpectralTriple, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal real basis of the self-adjoint part of the one-form span.

    Generators run over all pairs from the full real basis; the span is
    star-closed, so self-adjoint parts of the generators span its
    self-adjoint part.  Orthonormalization is in the Frobenius inner
    product; directions below tol are discarded.
    """
    imgs = t.rep.alg_images()
    bracket = [commutator(t.dirac, m) for m in imgs]
    gens = []
    for a in imgs:
        for db in bracket:
            h = _sa_part(a @ db)
            gens.append(np.concatenate([h.real.ravel(), h.imag.ravel()]))
    if not gens:
        return []
    mat = np.array(gens)
    scale = max(1.0, float(np.max(np.abs(mat))) if mat.size else 1.0)
    u, s, vt = np.linalg.svd(mat, full_matrices=False)
    keep = s > tol * scale
    d = t.hilbert_dim
    out = []
    for row in vt[keep]:
        re = row[:d * d].reshape(d, d)
        im = row[d * d:].reshape(d, d)
        out.append(re + 1j * im)
    return out


def span_residual(basis: Sequence[np.ndarray], x: np.ndarray) -> float:
    """Frobenius distance from x to the real span of an orthonormal basis."""
    x = np.asarray(x, dtype=complex)
    vec = np.concatenate([x.real.ravel(), x.imag.ravel()])
    for b in basis:
        bvec = np.concatenate([b.real.ravel(), b.imag.ravel()])
        vec = vec - np.dot(bvec, vec) * bvec
    return float(np.linalg.norm(vec))


def covariant_dirac(t: FiniteSpectralTriple, a: GaugePotential) -> np.ndarray:
    """D + A + J A J^{-1}; requires a real structure."""
    if t.real_structure is None:
        raise ValueError("covariant Dirac operator needs a real structure")
    mirror = antiunitary_sandwich(t.real_structure, a.matrix)
    return t.dirac + a.matrix + mirror


def gauge_transform(t: FiniteSpectralTriple, a: GaugePotential, u_spec) -> GaugePotential:
    """Gauge action A -> u A u* + u [D, u*] for a unitary algebra element u.

    The result keeps explicit one-form terms: conjugated originals plus the
    inhomogeneous term, using u a [D, b] u* = (u a)[D, b u*] - (u a b)[D, u*].
    """
    alg = t.algebra
    u_coords = _term_coords(t, u_spec)
    u_mats = alg.element_matrices(u_coords)
    for comp, m in zip(alg.components, u_mats):
        if operator_norm(m @ adjoint(m) - np.eye(comp.n)) > 1e-10:
            raise ValueError(f"gauge element is not unitary in component {comp.label}")
    ustar_mats = [adjoint(m) for m in u_mats]
    ustar_coords = alg.coords_from_matrices(ustar_mats)

    def times(c1, c2):
        m1 = alg.element_matrices(c1)
        m2 = alg.element_matrices(c2)
        return alg.coords_from_matrices([x @ y for x, y in zip(m1, m2)])

    new_terms = []
    for a_coords, b_coords in a.oneform.terms:
        ua = times(u_coords, a_coords)
        new_terms.append((ua, times(b_coords, ustar_coords)))
        uab = times(ua, b_coords)
        new_terms.append((-1.0 * uab, ustar_coords))
    new_terms.append((u_coords, ustar_coords))
    return GaugePotential(one_form(t, new_terms))


def scalar_fluctuation(t: FiniteSpectralTriple, a: GaugePotential,
                       mirror: bool = True) -> FiniteSpectralTriple:
    """Triple with Dirac D + A (+ J A J^{-1} when mirror is set)."""
    d = t.dirac + a.matrix
    if mirror:
        if t.real_structure is None:
            raise ValueError("mirrored fluctuation needs a real structure")
        d = d + antiunitary_sandwich(t.real_structure, a.matrix)
    return FiniteSpectralTriple(rep=t.rep, dirac=d, grading=t.grading,
                                real_structure=t.real_structure, kr_dim=t.kr_dim)
