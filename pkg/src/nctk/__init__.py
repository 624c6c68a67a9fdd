"""Finite noncommutative geometries: spectral triples, axioms, distances.

The package represents finite-dimensional real spectral triples, checks
the axioms (grading, reality signs, zeroth and first order, orientability,
Poincare duality), and computes Connes spectral distances between pure
states by maximizing the state difference under the commutator-norm
constraint.  Closed forms are provided where they exist; the standard-model
internal geometry and its massive-neutrino extensions are built in.
"""
from ._backend import available_backends, get_backend
from .algebra import (FiniteAlgebra, PureState, Representation, hopf_project,
                      make_algebra, make_component, state_functional_coords)
from .distance import (ClosedFormNotApplicable, DistanceResult, SolverOptions,
                       closed_form_m2, closed_form_two_point, commutator_kernel,
                       commutator_stack, is_infinite, spectral_distance)
from .linalg import adjoint, commutator, hermitian_eig, operator_norm
from .models import (adapted_unitary, basis_state, bloch_state, equatorial_state,
                     m2_triple, one_point_even_triple, random_commutative_triple,
                     two_point_scalar_state, two_point_triple, two_point_vector_state)
from .oneforms import (GaugePotential, OneForm, covariant_dirac, gauge_transform,
                       one_form, one_form_basis, scalar_fluctuation, span_residual)
from .serialization import (ParseError, document_to_triple, load_triple, parse_complex,
                            parse_state_spec, save_triple, triple_to_document)
from .standard_model import (DEFAULT_HIGGS_GRID, HiggsDoublet, NeutrinoExtension,
                             NeutrinoReport, SMParams, build_internal_triple,
                             canonical_projectors, ckm_matrix, default_params,
                             enumerate_extensions, extend_internal_triple, g_tt,
                             higgs_fluctuation, higgs_oneform, mass_matrix,
                             neutrino_extension_analysis, params_from_document,
                             predicted_sheet_distance, sheet_distance,
                             symbolic_intersection)
from .triple import (KR_SIGNS, AxiomCheck, AxiomReport, FiniteSpectralTriple,
                     check_poincare, integer_det, intersection_matrix, product_triple,
                     run_all_checks)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "available_backends", "get_backend",
    "FiniteAlgebra", "PureState", "Representation", "hopf_project",
    "make_algebra", "make_component", "state_functional_coords",
    "ClosedFormNotApplicable", "DistanceResult", "SolverOptions",
    "closed_form_m2", "closed_form_two_point", "commutator_kernel",
    "commutator_stack", "is_infinite", "spectral_distance",
    "adjoint", "commutator", "hermitian_eig", "operator_norm",
    "adapted_unitary", "basis_state", "bloch_state", "equatorial_state",
    "m2_triple", "one_point_even_triple", "random_commutative_triple",
    "two_point_scalar_state", "two_point_triple", "two_point_vector_state",
    "GaugePotential", "OneForm", "covariant_dirac", "gauge_transform",
    "one_form", "one_form_basis", "scalar_fluctuation", "span_residual",
    "ParseError", "document_to_triple", "load_triple", "parse_complex",
    "parse_state_spec", "save_triple", "triple_to_document",
    "DEFAULT_HIGGS_GRID", "HiggsDoublet", "NeutrinoExtension", "NeutrinoReport",
    "SMParams", "build_internal_triple", "canonical_projectors", "ckm_matrix",
    "default_params", "enumerate_extensions", "extend_internal_triple", "g_tt",
    "higgs_fluctuation", "higgs_oneform", "mass_matrix",
    "neutrino_extension_analysis", "params_from_document",
    "predicted_sheet_distance", "sheet_distance", "symbolic_intersection",
    "KR_SIGNS", "AxiomCheck", "AxiomReport", "FiniteSpectralTriple",
    "check_poincare", "integer_det", "intersection_matrix", "product_triple",
    "run_all_checks",
]
