"""Internal geometry of the standard model and its neutrino extensions.

The internal algebra is H (+) C (+) M3(C) acting on C^90 (three fermion
generations, particle and antiparticle sectors, quarks carrying a color
index).  The Dirac operator holds the fermion mass matrices; the Higgs
doublet enters as a scalar one-form fluctuation and shows up in the
distance between the C and H sheets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, PureState, Representation, make_algebra
from .distance import DistanceResult, SolverOptions, spectral_distance
from .linalg import adjoint, operator_norm
from .oneforms import GaugePotential, one_form, one_form_basis, scalar_fluctuation, span_residual
from .triple import FiniteSpectralTriple, check_poincare, integer_det, intersection_matrix

__all__ = [
    "DEFAULT_HIGGS_GRID",
    "SMParams",
    "HiggsDoublet",
    "NeutrinoExtension",
    "NeutrinoReport",
    "ckm_matrix",
    "default_params",
    "params_from_document",
    "mass_matrix",
    "build_internal_triple",
    "canonical_projectors",
    "higgs_oneform",
    "higgs_fluctuation",
    "g_tt",
    "predicted_sheet_distance",
    "sheet_distance",
    "extend_internal_triple",
    "symbolic_intersection",
    "neutrino_extension_analysis",
    "enumerate_extensions",
]


def ckm_matrix(theta12: float, theta13: float, theta23: float, delta: float) -> np.ndarray:
    """Quark mixing matrix in the standard three-angle, one-phase form."""
    c12, s12 = math.cos(theta12), math.sin(theta12)
    c13, s13 = math.cos(theta13), math.sin(theta13)
    c23, s23 = math.cos(theta23), math.sin(theta23)
    e = np.exp(-1j * delta)
    return np.array([
        [c12 * c13, s12 * c13, s13 * e],
        [-s12 * c23 - c12 * s23 * s13 / e, c12 * c23 - s12 * s23 * s13 / e, s23 * c13],
        [s12 * s23 - c12 * c23 * s13 / e, -c12 * s23 - s12 * c23 * s13 / e, c23 * c13],
    ], dtype=complex)


def _default_ckm() -> np.ndarray:
    # illustrative mixing angles, same order of magnitude as measured
    return ckm_matrix(0.2265, 0.0037, 0.0421, 1.196)


@dataclass(frozen=True)
class SMParams:
    """Fermion masses (arbitrary but consistent units) and quark mixing."""

    up_masses: tuple[float, ...] = (0.0022, 1.27, 172.76)
    down_masses: tuple[float, ...] = (0.0047, 0.095, 4.18)
    lepton_masses: tuple[float, ...] = (0.000511, 0.10566, 1.77686)
    ckm: np.ndarray = field(default_factory=_default_ckm)

    def __post_init__(self):
        object.__setattr__(self, "up_masses", tuple(float(m) for m in self.up_masses))
        object.__setattr__(self, "down_masses", tuple(float(m) for m in self.down_masses))
        object.__setattr__(self, "lepton_masses", tuple(float(m) for m in self.lepton_masses))
        n = len(self.up_masses)
        if not (len(self.down_masses) == len(self.lepton_masses) == n and n >= 1):
            raise ValueError("mass lists must share one positive length")
        if any(m <= 0 for m in self.up_masses + self.down_masses + self.lepton_masses):
            raise ValueError("masses must be positive")
        ckm = np.asarray(self.ckm, dtype=complex)
        if ckm.shape != (n, n):
            raise ValueError(f"mixing matrix must be {n}x{n}")
        if operator_norm(ckm @ adjoint(ckm) - np.eye(n)) > 1e-10:
            raise ValueError("mixing matrix must be unitary")
        object.__setattr__(self, "ckm", ckm)

    @property
    def generations(self) -> int:
        return len(self.up_masses)

    @property
    def top_mass(self) -> float:
        return self.up_masses[-1]


def default_params() -> SMParams:
    return SMParams()


def params_from_document(doc: dict) -> SMParams:
    """Build SMParams from a mass-file dict.

    Keys: up_masses, down_masses, lepton_masses (lists of positive reals),
    and either ckm_angles = [theta12, theta13, theta23, delta] or an
    explicit ckm matrix of [re, im] rows.  Absent keys fall back to the
    defaults.
    """
    base = default_params()
    kwargs = {}
    for key in ("up_masses", "down_masses", "lepton_masses"):
        if key in doc:
            kwargs[key] = tuple(float(x) for x in doc[key])
        else:
            kwargs[key] = getattr(base, key)
    if "ckm" in doc:
        kwargs["ckm"] = np.array([[complex(e[0], e[1]) for e in row] for row in doc["ckm"]])
    elif "ckm_angles" in doc:
        kwargs["ckm"] = ckm_matrix(*(float(x) for x in doc["ckm_angles"]))
    else:
        kwargs["ckm"] = base.ckm
    return SMParams(**kwargs)


@dataclass(frozen=True)
class HiggsDoublet:
    h1: complex = 0.0
    h2: complex = 0.0

    @property
    def is_vacuum(self) -> bool:
        return self.h1 == 0 and self.h2 == 0

    def doublet_norm(self) -> float:
        """sqrt(|1+h1|^2 + |h2|^2), the length of the shifted doublet."""
        return math.sqrt(abs(1.0 + self.h1) ** 2 + abs(self.h2) ** 2)

    def quaternion(self) -> np.ndarray:
        """The doublet as a quaternion, 2x2 complex."""
        return np.array([[self.h1, -np.conj(self.h2)],
                         [self.h2, np.conj(self.h1)]], dtype=complex)


def mass_matrix(params: SMParams, h: HiggsDoublet | None = None) -> np.ndarray:
    """The 8N x 7N mass block coupling left to right particles.

    Rows: weak-doublet quarks (2 x N x color 3), then doublet leptons
    (2 x N).  Columns: singlet quarks (2 x N x 3), then singlet leptons (N).
    A Higgs value replaces the vacuum doublet columns e1, e2 by the shifted
    doublet and its orthogonal partner.
    """
    n = params.generations
    mu = np.diag(params.up_masses).astype(complex)
    md = params.ckm @ np.diag(params.down_masses).astype(complex)
    me = np.diag(params.lepton_masses).astype(complex)
    if h is None:
        h = HiggsDoublet()
    q_up = np.array([1.0 + h.h1, h.h2], dtype=complex)
    q_down = np.array([-np.conj(h.h2), 1.0 + np.conj(h.h1)], dtype=complex)
    e1 = np.array([1.0, 0.0])
    e2 = np.array([0.0, 1.0])
    quark = np.kron(np.outer(q_up, e1), mu) + np.kron(np.outer(q_down, e2), md)
    out = np.zeros((8 * n, 7 * n), dtype=complex)
    out[:6 * n, :6 * n] = np.kron(quark, np.eye(3))
    out[6 * n:, 6 * n:] = np.kron(q_down.reshape(2, 1), me)
    return out


def _internal_algebra() -> FiniteAlgebra:
    return make_algebra(("H", 2, "h"), ("C", 1, "c"), ("Mn", 3, "m3"))


def _embed(total: int, offset: int, block: np.ndarray, out: np.ndarray) -> None:
    k = block.shape[0]
    out[offset:offset + k, offset:offset + k] += block


def _internal_images(n: int):
    """Operator images of the component bases on C^(30N).

    Layout: particle left (quarks 6N, leptons 2N), particle right
    (quarks 6N, leptons N), then the antiparticle mirror of the same
    layout.  Quark indices are weak x generation x color.
    """
    dim = 30 * n
    i_n = np.eye(n)
    off_pl_q, off_pl_l = 0, 6 * n
    off_pr_q, off_pr_l = 8 * n, 14 * n
    a_shift = 15 * n
    off_al_q, off_al_l = a_shift, a_shift + 6 * n
    off_ar_q, off_ar_l = a_shift + 8 * n, a_shift + 14 * n

    def image_h(a: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, dim), dtype=complex)
        _embed(dim, off_pl_q, np.kron(np.kron(a, i_n), np.eye(3)), out)
        _embed(dim, off_pl_l, np.kron(a, i_n), out)
        return out

    def image_c(b: complex) -> np.ndarray:
        out = np.zeros((dim, dim), dtype=complex)
        bb = np.array([[b, 0.0], [0.0, np.conj(b)]])
        _embed(dim, off_pr_q, np.kron(np.kron(bb, i_n), np.eye(3)), out)
        _embed(dim, off_pr_l, np.conj(b) * i_n, out)
        _embed(dim, off_al_l, np.conj(b) * np.eye(2 * n), out)
        _embed(dim, off_ar_l, np.conj(b) * i_n, out)
        return out

    def image_m3(c: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, dim), dtype=complex)
        block = np.kron(np.eye(2 * n), c)
        _embed(dim, off_al_q, block, out)
        _embed(dim, off_ar_q, block, out)
        return out

    return image_h, image_c, image_m3


def build_internal_triple(params: SMParams | None = None) -> FiniteSpectralTriple:
    """The internal spectral triple on C^(30N), KR-dimension 0."""
    params = params or default_params()
    n = params.generations
    dim = 30 * n
    algebra = _internal_algebra()
    image_h, image_c, image_m3 = _internal_images(n)
    images = [
        [image_h(e) for e in algebra.components[0].alg_basis],
        [image_c(e[0, 0]) for e in algebra.components[1].alg_basis],
        [image_m3(e) for e in algebra.components[2].alg_basis],
    ]
    rep = Representation(algebra=algebra, hilbert_dim=dim, images=images)

    m = mass_matrix(params)
    d_p = np.zeros((15 * n, 15 * n), dtype=complex)
    d_p[:8 * n, 8 * n:] = m
    d_p[8 * n:, :8 * n] = adjoint(m)
    dirac = np.zeros((dim, dim), dtype=complex)
    dirac[:15 * n, :15 * n] = d_p
    dirac[15 * n:, 15 * n:] = np.conj(d_p)

    grading = np.diag(np.concatenate([
        -np.ones(8 * n), np.ones(7 * n), -np.ones(8 * n), np.ones(7 * n)]))
    swap = np.zeros((dim, dim))
    swap[:15 * n, 15 * n:] = np.eye(15 * n)
    swap[15 * n:, :15 * n] = np.eye(15 * n)
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=grading.astype(complex),
                                real_structure=swap.astype(complex), kr_dim=0)


def canonical_projectors(algebra: FiniteAlgebra):
    """The projector classes (p_C, p_H, p_M3), as per-component matrices."""
    e11 = np.zeros((3, 3), dtype=complex)
    e11[0, 0] = 1.0
    p_c = [None, np.eye(1, dtype=complex), None]
    p_h = [np.eye(2, dtype=complex), None, None]
    p_m3 = [None, None, e11]
    del algebra
    return [p_c, p_h, p_m3]


def higgs_oneform(t: FiniteSpectralTriple, h: HiggsDoublet) -> GaugePotential:
    """The scalar fluctuation pi(q)[D, pi(1_C)] + pi(1_C)[D, pi(q*)].

    q is the Higgs value as a quaternion; the combination is self-adjoint
    and substitutes the shifted doublet into the mass columns.
    """
    q = h.quaternion()
    unit_c = [None, np.eye(1, dtype=complex), None]
    a_q = [q, None, None]
    a_q_star = [adjoint(q), None, None]
    form = one_form(t, [(a_q, unit_c), (unit_c, a_q_star)])
    return GaugePotential(form)


def higgs_fluctuation(t: FiniteSpectralTriple, h: HiggsDoublet,
                      membership_tol: float = 1e-8) -> FiniteSpectralTriple:
    """Fluctuated triple with Dirac D + H(h); the vacuum returns t itself."""
    if h.is_vacuum:
        return t
    pot = higgs_oneform(t, h)
    basis = one_form_basis(t)
    scale = max(1.0, operator_norm(pot.matrix))
    if span_residual(basis, pot.matrix) > membership_tol * scale:
        raise ValueError("fluctuation is not a one-form of the triple")
    return scalar_fluctuation(t, pot, mirror=False)


def g_tt(params: SMParams, h: HiggsDoublet) -> float:
    """Metric coefficient along the discrete direction, (|1+h1|^2+|h2|^2) m_t^2."""
    return (h.doublet_norm() * params.top_mass) ** 2


def predicted_sheet_distance(params: SMParams, h: HiggsDoublet) -> float:
    g = g_tt(params, h)
    if g == 0.0:
        return math.inf
    return 1.0 / math.sqrt(g)


# grid used by the sheet-distance sweep; spans the vacuum, real and complex
# shifts, a large doublet and a near-degenerate one
DEFAULT_HIGGS_GRID: tuple[HiggsDoublet, ...] = (
    HiggsDoublet(0.0, 0.0),
    HiggsDoublet(-0.5, 0.3j),
    HiggsDoublet(0.5, 0.0),
    HiggsDoublet(0.0, 1.0j),
    HiggsDoublet(1.0, 1.0),
    HiggsDoublet(-0.3, -0.4),
    HiggsDoublet(2.0, 0.0),
    HiggsDoublet(0.0, -0.7),
    HiggsDoublet(-0.9, 0.05j),
)


def sheet_distance(t_h: FiniteSpectralTriple, h: HiggsDoublet | None = None,
                   options: SolverOptions | None = None) -> DistanceResult:
    """Distance between the C sheet and the H sheet state.

    The H component has a one-dimensional self-adjoint part, so it carries
    exactly one metric state and no state argument is needed.  The Higgs
    value is accepted for report symmetry; the distance is a property of
    the fluctuated triple alone.
    """
    del h
    state_h = PureState(0, np.array([1.0, 0.0]))
    state_c = PureState(1, np.array([1.0]))
    return spectral_distance(t_h, state_c, state_h, options)


@dataclass(frozen=True)
class NeutrinoExtension:
    """alpha added right neutrinos, each Dirac-type (2) or Majorana-type (1).

    A zero mass marks a neutrino kept massless; that entry contributes its
    epsilon to the intersection bookkeeping but not to the Dirac operator.
    """

    epsilons: tuple[int, ...] = ()
    masses: tuple[float, ...] | None = None

    def __post_init__(self):
        eps = tuple(int(e) for e in self.epsilons)
        if len(eps) > 3 or any(e not in (1, 2) for e in eps):
            raise ValueError("epsilons must be at most three values from {1, 2}")
        object.__setattr__(self, "epsilons", eps)
        masses = self.masses
        if masses is None:
            masses = tuple(1.0 for _ in eps)
        masses = tuple(float(m) for m in masses)
        if len(masses) != len(eps) or any(m < 0 for m in masses):
            raise ValueError("one nonnegative mass per added neutrino")
        object.__setattr__(self, "masses", masses)

    @property
    def alpha(self) -> int:
        return len(self.epsilons)


def symbolic_intersection(epsilons) -> np.ndarray:
    """Intersection matrix of the extended geometry, (C, H, M3) order.

    The sterile states only see the C algebra, so only the (C, C) entry
    moves: it gains the sum of the epsilons.
    """
    s = int(sum(epsilons))
    return np.array([[6 + s, -6, 6], [-6, 0, -6], [6, -6, 0]], dtype=int)


def extend_internal_triple(base: FiniteSpectralTriple,
                           ext: NeutrinoExtension) -> FiniteSpectralTriple:
    """Append sterile right neutrinos to the internal triple.

    A Dirac-type neutrino adds a particle/antiparticle pair carrying
    diag(b, conj b) with the mass off the diagonal; a Majorana-type one adds
    a single self-conjugate state, forcing the mass onto the diagonal.  Both
    new sectors are right-handed (grading +1).
    """
    extra = sum(ext.epsilons)
    if extra == 0:
        return base
    dim0 = base.hilbert_dim
    dim = dim0 + extra
    algebra = base.algebra

    images = []
    for k, comp in enumerate(algebra.components):
        comp_images = []
        for i, e in enumerate(comp.alg_basis):
            big = np.zeros((dim, dim), dtype=complex)
            big[:dim0, :dim0] = base.rep.images[k][i]
            if comp.label == "c":
                b = e[0, 0]
                off = dim0
                for eps in ext.epsilons:
                    big[off, off] = b
                    if eps == 2:
                        big[off + 1, off + 1] = np.conj(b)
                    off += eps
            comp_images.append(big)
        images.append(comp_images)
    rep = Representation(algebra=algebra, hilbert_dim=dim, images=images)

    dirac = np.zeros((dim, dim), dtype=complex)
    dirac[:dim0, :dim0] = base.dirac
    grading = np.zeros((dim, dim), dtype=complex)
    grading[:dim0, :dim0] = base.grading
    unitary = np.zeros((dim, dim), dtype=complex)
    unitary[:dim0, :dim0] = base.real_structure
    off = dim0
    for eps, mass in zip(ext.epsilons, ext.masses):
        if eps == 2:
            # mass sits on the (particle, antiparticle) entry
            dirac[off, off + 1] = mass
            dirac[off + 1, off] = mass
            unitary[off, off + 1] = 1.0
            unitary[off + 1, off] = 1.0
        else:
            # the state is its own antiparticle: diagonal mass, J fixes it
            dirac[off, off] = mass
            unitary[off, off] = 1.0
        grading[off:off + eps, off:off + eps] = np.eye(eps)
        off += eps
    return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=grading,
                                real_structure=unitary, kr_dim=base.kr_dim)


def _majorana_obstruction(mass: float) -> dict:
    """Best diagonal grading for a one-dimensional self-conjugate block.

    The commutant of b acting on one state is everything diagonal, so the
    grading can only be +-1 there; either sign leaves |G D + D G| = 2 mass.
    """
    residual = min(abs(g * mass + mass * g) for g in (1.0, -1.0))
    return {"residual_lower_bound": residual, "grading_exists": residual == 0.0}


def _dirac_block_grading(mass: float) -> dict:
    """diag(1, -1) grades a particle/antiparticle pair with off-diagonal mass."""
    d = np.array([[0.0, mass], [mass, 0.0]])
    g = np.diag([1.0, -1.0])
    residual = operator_norm(g @ d + d @ g)
    return {"residual_lower_bound": residual, "grading_exists": residual <= 1e-12}


@dataclass(frozen=True)
class NeutrinoReport:
    extension: NeutrinoExtension
    intersection_symbolic: np.ndarray
    intersection_numeric: np.ndarray
    determinant: int
    determinant_effective: int
    poincare_holds: bool
    grading_blocks: tuple[dict, ...]
    grading_obstructed: bool
    admissible: bool
    massless_escape: bool

    def to_dict(self) -> dict:
        return {
            "alpha": self.extension.alpha,
            "epsilons": list(self.extension.epsilons),
            "masses": list(self.extension.masses),
            "intersection": [[int(x) for x in row] for row in self.intersection_symbolic],
            "intersection_matches_representation": bool(
                np.array_equal(self.intersection_symbolic, self.intersection_numeric)),
            "determinant": self.determinant,
            "determinant_effective": self.determinant_effective,
            "poincare_holds": self.poincare_holds,
            "grading_obstructed": self.grading_obstructed,
            "grading_blocks": list(self.grading_blocks),
            "admissible": self.admissible,
            "massless_escape": self.massless_escape,
        }


def neutrino_extension_analysis(ext: NeutrinoExtension,
                                params: SMParams | None = None) -> NeutrinoReport:
    """Duality and grading constraints for a sterile-neutrino extension.

    The intersection matrix is computed twice: from the closed formula and
    from the extended representation itself.  Admissibility needs a nonzero
    determinant and a consistent grading, which together force every added
    neutrino to be Dirac-type and at most two of them massive.
    """
    base = build_internal_triple(params)
    extended = extend_internal_triple(base, ext)
    projectors = canonical_projectors(base.algebra)
    numeric = intersection_matrix(extended, projectors)
    symbolic = symbolic_intersection(ext.epsilons)
    if not np.array_equal(numeric, symbolic):
        raise AssertionError("representation disagrees with the closed formula")
    det = integer_det(symbolic)
    poincare = check_poincare(symbolic).passed
    # a massless neutrino adds no mass coupling, so the geometry one would
    # actually build omits its states; duality is judged on what remains
    massive_eps = [e for e, m in zip(ext.epsilons, ext.masses) if m > 0]
    det_eff = integer_det(symbolic_intersection(massive_eps))

    blocks = []
    obstructed = False
    for eps, mass in zip(ext.epsilons, ext.masses):
        block = _majorana_obstruction(mass) if eps == 1 else _dirac_block_grading(mass)
        block["epsilon"] = eps
        blocks.append(block)
        obstructed = obstructed or not block["grading_exists"]

    all_dirac = all(e == 2 for e in ext.epsilons)
    has_massless = any(m == 0 for m in ext.masses)
    admissible = all_dirac and (ext.alpha < 3 or has_massless)
    escape = all_dirac and ext.alpha == 3 and has_massless
    return NeutrinoReport(
        extension=ext,
        intersection_symbolic=symbolic,
        intersection_numeric=numeric,
        determinant=det,
        determinant_effective=det_eff,
        poincare_holds=poincare,
        grading_blocks=tuple(blocks),
        grading_obstructed=obstructed,
        admissible=admissible,
        massless_escape=escape,
    )


def enumerate_extensions() -> list[NeutrinoExtension]:
    """All 15 configurations with up to three added neutrinos."""
    out = [NeutrinoExtension(())]
    for alpha in (1, 2, 3):
        for bits in range(2 ** alpha):
            eps = tuple(1 + ((bits >> i) & 1) for i in range(alpha))
            out.append(NeutrinoExtension(eps))
    return out
