"""Dirichlet eigenvalue bounds for tubes around complex submanifolds of projective space."""

from .errors import BracketError, DomainError, InconsistencyError
from .trig import TrigBundle, inv_ta, trig
from .models import (
    CurvatureVector,
    ModelDescriptor,
    ModelFamily,
    cut_radius_for,
    make_model,
    model_curvatures,
)
from .geometry import h_general, h_model_c2, theta_general, theta_model, weingarten_trace
from .degrees import (
    CoefficientTable,
    DegreeProfile,
    ab_ratio,
    ab_volume_coeff,
    beta,
    beta_table,
    coefficient_table,
    gamma_generating_check,
    psi,
    quadric_binomial_identity,
)
from .spectrum import (
    RadialProblem,
    SpectralSolution,
    eigenfunction_weights,
    solve_mu1,
    solve_mu1_fd,
)
from .bounds import (
    BoundReport,
    CorrectionBreakdown,
    TubeQuadratures,
    bound_report,
    correction_m,
    correction_m_quadric,
    correction_m_surrogate,
    direct_quotient_oracle,
    quadratures,
    rho_thresholds,
    tube_quadratures,
)
from .volume import tube_volume_density, tube_volume_ratio

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "DomainError",
    "InconsistencyError",
    "TrigBundle",
    "trig",
    "inv_ta",
    "CurvatureVector",
    "ModelDescriptor",
    "ModelFamily",
    "cut_radius_for",
    "make_model",
    "model_curvatures",
    "h_general",
    "h_model_c2",
    "theta_general",
    "theta_model",
    "weingarten_trace",
    "CoefficientTable",
    "DegreeProfile",
    "ab_ratio",
    "ab_volume_coeff",
    "beta",
    "beta_table",
    "coefficient_table",
    "gamma_generating_check",
    "psi",
    "quadric_binomial_identity",
    "RadialProblem",
    "SpectralSolution",
    "eigenfunction_weights",
    "solve_mu1",
    "solve_mu1_fd",
    "BoundReport",
    "CorrectionBreakdown",
    "TubeQuadratures",
    "bound_report",
    "correction_m",
    "correction_m_quadric",
    "correction_m_surrogate",
    "direct_quotient_oracle",
    "quadratures",
    "rho_thresholds",
    "tube_quadratures",
    "tube_volume_density",
    "tube_volume_ratio",
    "__version__",
]
