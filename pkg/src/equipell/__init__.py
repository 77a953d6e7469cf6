"""equipell: moment matrices, Christoffel functions and generalized Pell
identities for equilibrium measures of compact semi-algebraic sets."""

from .christoffel import (
    OrthonormalBasis,
    SingularMatrixError,
    christoffel_eval,
    christoffel_inverse_poly,
    orthonormal_basis,
    pstar_density,
    weak_convergence_probe,
)
from .maxdet import (
    DualCertificate,
    Instance,
    SolveError,
    SolveReport,
    assemble_instance,
    dual_certificate,
    extension_sweep,
    feasible_start,
    gradient_fd_check,
    solve_primal,
)
from .measures import (
    MeasureModel,
    QuadratureOrderError,
    SamplingError,
    ball2d_moment,
    interval_moment,
    named_model,
    quadrature_moment,
    simplex2d_moment,
    uniform_start_moments,
)
from .momkit import (
    GeneratorSet,
    MomentMatrix,
    MomentSequence,
    extension_distance,
    localizing_matrix,
    moment_matrix,
    riesz_apply,
    shifted_sequence,
)
from .mvpoly import (
    Poly,
    basis_size,
    chebyshev,
    monomial_basis,
    poly_from_literal,
    poly_to_literal,
)
from .pellcheck import (
    CertificateError,
    PellReport,
    certificate_to_moments,
    chebyshev_pell_identity,
    generalized_pell_residual,
    top_slice_check,
)
from .sets import BUILTIN, builtin_set, load_set, resolve_set, save_set

__version__ = "0.1.0"

__all__ = [
    "BUILTIN",
    "CertificateError",
    "DualCertificate",
    "GeneratorSet",
    "Instance",
    "MeasureModel",
    "MomentMatrix",
    "MomentSequence",
    "OrthonormalBasis",
    "PellReport",
    "Poly",
    "QuadratureOrderError",
    "SamplingError",
    "SingularMatrixError",
    "SolveError",
    "SolveReport",
    "assemble_instance",
    "ball2d_moment",
    "basis_size",
    "builtin_set",
    "certificate_to_moments",
    "chebyshev",
    "chebyshev_pell_identity",
    "christoffel_eval",
    "christoffel_inverse_poly",
    "dual_certificate",
    "extension_distance",
    "extension_sweep",
    "feasible_start",
    "generalized_pell_residual",
    "gradient_fd_check",
    "interval_moment",
    "load_set",
    "localizing_matrix",
    "moment_matrix",
    "monomial_basis",
    "named_model",
    "orthonormal_basis",
    "poly_from_literal",
    "poly_to_literal",
    "pstar_density",
    "quadrature_moment",
    "resolve_set",
    "riesz_apply",
    "save_set",
    "shifted_sequence",
    "simplex2d_moment",
    "solve_primal",
    "top_slice_check",
    "uniform_start_moments",
    "weak_convergence_probe",
]
