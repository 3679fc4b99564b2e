"""Assembly of the degree-dependent correction term and the eigenvalue bound.

The upper bound for the first Dirichlet eigenvalue of a tube around a center
cut out by polynomials of given degrees is

    mu1(tube around P) <= mu1(model tube) + M,

where M is a ratio of two weighted combinations of the radial integrals

    B_i = integral of s ta^(2i) nu dr,    C_i = integral of s^(2i) c^(-2i) mu dr,

with mu and nu the eigenfunction weight densities.  The combination
coefficients are alternating products of binomials with the degree sums
beta_i; they are assembled in exact integer arithmetic and multiplied into
the floating-point integrals only at the end, since the alternation makes
naive floating accumulation cancel catastrophically.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .degrees import DegreeProfile, beta_table
from .errors import DomainError, InconsistencyError
from .models import CurvatureVector, ModelDescriptor, ModelFamily, cut_radius_for
from .quadrature import PanelRule, gauss_rule
from .spectrum import NU_DOMAIN_FACTOR, RadialProblem, SpectralSolution, solve_mu1
from .trig import inv_ta

_FINE_PANELS = 256
_COARSE_PANELS = 128
_GAUSS_ORDER = 16
QUAD_TOL = 1e-8


@dataclass(frozen=True)
class TubeQuadratures:
    """The radial integrals B_0..B_q and C_0..C_q with absolute error estimates."""

    B: tuple[float, ...]
    C: tuple[float, ...]
    B_abs_error: tuple[float, ...]
    C_abs_error: tuple[float, ...]


@dataclass(frozen=True)
class CorrectionBreakdown:
    """All pieces of the correction term: integrals, numerator, denominator, M."""

    B: tuple[float, ...]
    C: tuple[float, ...]
    numerator: float
    denominator: float
    M: float
    error_estimate: float


@dataclass(frozen=True)
class BoundReport:
    """The assembled bound with its sign classification and thresholds."""

    model: ModelDescriptor
    n: int
    q: int
    lam: float
    rho: float
    profile: DegreeProfile
    mu1_model: float
    M: float
    bound: float
    sign_class: str
    rho1: float | None
    rho0: float | None
    warnings: tuple[str, ...]


def _check_solution(solution: SpectralSolution, model: ModelDescriptor, lam: float, rho: float) -> None:
    p = solution.problem
    if p.model != model or p.lam != lam or p.rho != rho:
        raise DomainError(
            "the spectral solution was computed for different data "
            f"(model={p.model.family.value}, lam={p.lam!r}, rho={p.rho!r})"
        )


def _nu_domain_guard(lam: float, rho: float) -> None:
    limit = NU_DOMAIN_FACTOR * math.pi / (4.0 * math.sqrt(lam))
    if rho > limit:
        raise DomainError(
            f"the nu-weighted integrals need rho <= {limit!r} "
            f"(0.1% below the zero of c4); got rho={rho!r}"
        )


def _node_data(solution: SpectralSolution, rule: PanelRule):
    model, lam = solution.problem.model, solution.problem.lam
    r = rule.nodes
    f, fp = solution.eval(r)
    root = math.sqrt(lam)
    s = np.sin(root * r) / root
    c = np.cos(root * r)
    c4 = np.cos(2.0 * root * r)
    return f, fp, s, c, c4


def _bc_integrals(solution: SpectralSolution, rule: PanelRule) -> tuple[np.ndarray, np.ndarray]:
    model = solution.problem.model
    n, q = model.n, model.q
    f, fp, s, c, c4 = _node_data(solution, rule)
    ta2 = (s / c) ** 2
    base_c = f * f * s ** (2 * (n - q) - 1) * c ** (2 * q + 1)
    base_b = 2.0 * f * fp * s ** (2 * (n - q)) * c ** (2 * q) / c4
    B = np.empty(q + 1)
    C = np.empty(q + 1)
    wb, wc = base_b.copy(), base_c.copy()
    for i in range(q + 1):
        B[i] = rule.integrate(wb)
        C[i] = rule.integrate(wc)
        wb *= ta2
        wc *= ta2
    return B, C


def tube_quadratures(solution: SpectralSolution) -> TubeQuadratures:
    """Compute all B_i and C_i on the solution with a panel-halving error estimate."""
    lam, rho = solution.problem.lam, solution.problem.rho
    _nu_domain_guard(lam, rho)
    refine = 10 if math.cos(2.0 * math.sqrt(lam) * rho) < 0.2 else 0
    fine = gauss_rule(0.0, rho, _FINE_PANELS, _GAUSS_ORDER, refine_right=refine)
    coarse = gauss_rule(0.0, rho, _COARSE_PANELS, _GAUSS_ORDER, refine_right=refine)
    Bf, Cf = _bc_integrals(solution, fine)
    Bc, Cc = _bc_integrals(solution, coarse)
    b_err = np.abs(Bf - Bc)
    c_err = np.abs(Cf - Cc)
    scale = max(np.max(np.abs(Bf)), np.max(np.abs(Cf)))
    if np.any(b_err > QUAD_TOL * np.maximum(np.abs(Bf), scale)) or np.any(
        c_err > QUAD_TOL * np.maximum(np.abs(Cf), scale)
    ):
        _warnings.warn("tube quadratures exceeded the 1e-8 relative error target")
    if np.any(Cf <= 0.0):
        raise InconsistencyError("every C integral must be positive")
    if np.any(Bf > 0.0):
        raise InconsistencyError("every B integral must be nonpositive")
    return TubeQuadratures(
        B=tuple(float(x) for x in Bf),
        C=tuple(float(x) for x in Cf),
        B_abs_error=tuple(float(x) for x in b_err),
        C_abs_error=tuple(float(x) for x in c_err),
    )


def quadratures(solution: SpectralSolution) -> tuple[list[float], list[float]]:
    """The B and C integral lists for i = 0..q."""
    tq = tube_quadratures(solution)
    return list(tq.B), list(tq.C)


def _assemble(
    w: list[int],
    zc: int,
    lam: float,
    tq: TubeQuadratures,
    num_coeffs: list[int] | None = None,
) -> CorrectionBreakdown:
    """Combine integer coefficient tables with the integrals, floats last.

    ``w[i]`` is the exact integer carrying lam^i in the denominator weights;
    the numerator coefficients derive from w unless given explicitly.
    """
    q = len(w) - 1
    if num_coeffs is None:
        num_coeffs = [(j - zc) * w[j] - (j + 1) * w[j + 1] for j in range(q)]
        num_coeffs.append((q - zc) * w[q])
    num_terms = [float(num_coeffs[j]) * lam ** (j + 1) * tq.B[j] for j in range(q + 1)]
    den_terms = [float(w[i]) * lam**i * tq.C[i] for i in range(q + 1)]
    numerator = math.fsum(num_terms)
    denominator = math.fsum(den_terms)
    if denominator <= 0.0:
        raise InconsistencyError(
            f"denominator must be positive, got {denominator!r}; "
            "the weighted density positivity was violated"
        )
    num_err = math.fsum(
        abs(float(num_coeffs[j])) * lam ** (j + 1) * tq.B_abs_error[j] for j in range(q + 1)
    )
    den_err = math.fsum(abs(float(w[i])) * lam**i * tq.C_abs_error[i] for i in range(q + 1))
    M = numerator / denominator
    err = (num_err + abs(M) * den_err) / denominator
    return CorrectionBreakdown(
        B=tq.B,
        C=tq.C,
        numerator=numerator,
        denominator=denominator,
        M=M,
        error_estimate=err,
    )


def correction_m(
    model: ModelDescriptor,
    profile: DegreeProfile,
    lam: float,
    rho: float,
    solution: SpectralSolution,
    quads: TubeQuadratures | None = None,
) -> CorrectionBreakdown:
    """The correction term for a center with the given degree profile.

    Numerator coefficient of B_j is
    (-1)^j lam^(j+1) [ (j-zc) C(n-1,q-j) beta_j + (j+1) C(n-1,q-j-1) beta_{j+1} ]
    (with only the first piece at j = q); denominator coefficient of C_i is
    (-1)^i C(n-1,q-i) lam^i beta_i.
    """
    _check_solution(solution, model, lam, rho)
    n, q, zc = model.n, model.q, model.zc
    if (profile.n, profile.q) != (n, q):
        raise DomainError(
            f"profile dimensions ({profile.n}, {profile.q}) do not match the model ({n}, {q})"
        )
    betas = beta_table(profile)
    w = [(-1 if i % 2 else 1) * comb(n - 1, q - i) * betas[i] for i in range(q + 1)]
    tq = quads if quads is not None else tube_quadratures(solution)
    return _assemble(w, zc, lam, tq)


def correction_m_quadric(
    n: int,
    a_n: int,
    lam: float,
    rho: float,
    solution: SpectralSolution,
    quads: TubeQuadratures | None = None,
) -> CorrectionBreakdown:
    """Hypersurface specialization of the correction with the factored (a_n - 2).

    The numerator carries the explicit (a_n - 2) factor, so it vanishes
    identically for the degree-2 hypersurface; must agree with the general
    assembly on the same inputs.
    """
    model = solution.problem.model
    if model.family is not ModelFamily.QUADRIC or model.n != n:
        raise DomainError("the factored correction applies to the hyperquadric model only")
    if a_n < 1:
        raise DomainError(f"polynomial degree must be >= 1, got {a_n}")
    _check_solution(solution, model, lam, rho)
    q = n - 1
    zc = n - 1
    shift = a_n - 1
    w = [(-1 if i % 2 else 1) * comb(n - 1, q - i) * shift**i for i in range(q + 1)]
    num_coeffs = [
        (a_n - 2) * (-1 if i % 2 else 1) * (i + 1) * comb(n - 1, i + 1) * shift**i
        for i in range(q)
    ]
    num_coeffs.append(0)  # (q - zc) vanishes for the hyperquadric
    tq = quads if quads is not None else tube_quadratures(solution)
    return _assemble(w, zc, lam, tq, num_coeffs=num_coeffs)


def correction_m_surrogate(
    model: ModelDescriptor,
    k: CurvatureVector,
    lam: float,
    solution: SpectralSolution,
    quads: TubeQuadratures | None = None,
) -> CorrectionBreakdown:
    """Correction assembled from the moments of a constant-curvature surrogate.

    Replaces the degree-derived weights by the signed elementary symmetric
    functions of k^2.  Cross-validates the whole reduction chain against
    ``direct_quotient_oracle``: both must produce the same bound.
    """
    if len(k) != model.q:
        raise DomainError(f"curvature vector has length {len(k)}, expected q={model.q}")
    q, zc = model.q, model.zc
    e = [0.0] * (q + 1)
    e[0] = 1.0
    for ki in k.k:
        k2 = ki * ki
        for j in range(q, 0, -1):
            e[j] += k2 * e[j - 1]
    # moments W_i = (-1)^i e_i(k^2) already carry their lam powers
    W = [(-1.0 if i % 2 else 1.0) * e[i] for i in range(q + 1)]
    tq = quads if quads is not None else tube_quadratures(solution)
    num = math.fsum(
        ((j - zc) * lam * W[j] - (j + 1) * W[j + 1]) * tq.B[j] for j in range(q)
    ) + (q - zc) * lam * W[q] * tq.B[q]
    den = math.fsum(W[i] * tq.C[i] for i in range(q + 1))
    if den <= 0.0:
        raise InconsistencyError(f"surrogate denominator must be positive, got {den!r}")
    num_err = math.fsum(
        abs((j - zc) * lam * W[j] - (j + 1) * W[j + 1]) * tq.B_abs_error[j] for j in range(q)
    ) + abs((q - zc) * lam * W[q]) * tq.B_abs_error[q]
    den_err = math.fsum(abs(W[i]) * tq.C_abs_error[i] for i in range(q + 1))
    M = num / den
    return CorrectionBreakdown(
        B=tq.B,
        C=tq.C,
        numerator=num,
        denominator=den,
        M=M,
        error_estimate=(num_err + abs(M) * den_err) / den,
    )


def direct_quotient_oracle(
    model: ModelDescriptor,
    k: CurvatureVector,
    lam: float,
    rho: float,
    solution: SpectralSolution,
    panels: int = _FINE_PANELS,
) -> float:
    """Rayleigh-quotient bound for a constant-curvature surrogate center.

    Evaluates mu1 + (integral of (f^2)' s c (h_P - h_model) theta_P dr) /
    (integral of f^2 theta_P dr) by direct quadrature, with h_P and theta_P
    built from the curvature vector.  Independent of the coefficient
    reduction; used to certify it.  Pass a panel count different from the
    default to decouple the quadrature nodes from the assembled path.
    """
    _check_solution(solution, model, lam, rho)
    if len(k) != model.q:
        raise DomainError(f"curvature vector has length {len(k)}, expected q={model.q}")
    n, q, zc = model.n, model.q, model.zc
    refine = 10 if math.cos(2.0 * math.sqrt(lam) * rho) < 0.2 else 0
    rule = gauss_rule(0.0, rho, panels, _GAUSS_ORDER, refine_right=refine)
    f, fp, s, c, c4 = _node_data(solution, rule)

    h_p = np.zeros_like(s)
    for i, ki in enumerate(k.k):
        denom = c * c - ki * ki * s * s
        if np.any(denom <= 0.0):
            raise DomainError(
                f"surrogate focal radius reached inside [0, rho] for curvature index {i}"
            )
        h_p += (lam + ki * ki) / denom
    if zc:
        h_model = (zc * lam / c4 + q * lam) / (c * c)
    else:
        h_model = q * lam / (c * c)

    theta_p = s ** (2 * n - 2 * q - 1) * c
    for ki in k.k:
        theta_p = theta_p * (c * c - s * s * ki * ki)

    num = rule.integrate(2.0 * f * fp * s * c * (h_p - h_model) * theta_p)
    den = rule.integrate(f * f * theta_p)
    if den <= 0.0:
        raise InconsistencyError(f"oracle denominator must be positive, got {den!r}")
    return solution.mu1 + num / den


def rho_thresholds(n: int, a_n: int, lam: float) -> tuple[float, float]:
    """Radii below which the hypersurface correction has a certified sign.

    rho1 minimizes inv_ta(sqrt((2j+1)/(lam (n-2j-2) (a_n-1)))) over the j
    with n-2j-2 > 0 (others contribute +inf); rho0 caps it by the model cut
    radius.  The degree factor (a_n - 1) is kept inside the root: it makes
    the threshold conservative and matches the sign of the integrand that
    the threshold protects.
    """
    if a_n < 2:
        raise DomainError(f"sign thresholds are defined for degree >= 2, got {a_n}")
    if n < 2:
        raise DomainError(f"hypersurface context needs n >= 2, got {n}")
    if lam <= 0:
        raise DomainError(f"thresholds require lam > 0, got {lam!r}")
    rho1 = math.inf
    for j in range(0, (n - 2) // 2 + 1):
        m = n - 2 * j - 2
        if m <= 0:
            continue
        val = inv_ta(lam, math.sqrt((2 * j + 1) / (lam * m * (a_n - 1))))
        rho1 = min(rho1, val)
    rho0 = min(rho1, cut_radius_for(n - 1, lam))
    return rho1, rho0


def _rho1_without_degree_factor(n: int, lam: float) -> float:
    rho1 = math.inf
    for j in range(0, (n - 2) // 2 + 1):
        m = n - 2 * j - 2
        if m <= 0:
            continue
        rho1 = min(rho1, inv_ta(lam, math.sqrt((2 * j + 1) / (lam * m))))
    return rho1


def bound_report(
    model: ModelDescriptor,
    profile: DegreeProfile,
    lam: float,
    rho: float,
    tol: float = 1e-10,
) -> BoundReport:
    """Solve the model spectrum, assemble M and classify the sign of the bound."""
    problem = RadialProblem(model, lam, rho)
    solution = solve_mu1(problem, tol=tol)
    quads = tube_quadratures(solution)
    breakdown = correction_m(model, profile, lam, rho, solution, quads=quads)

    notes: list[str] = []
    cut = cut_radius_for(model.zc, lam)
    if rho > 0.99 * cut:
        notes.append("rho is within 1% of the model cut radius")
    notes.append(
        "validity presumes rho below the cut distance of the actual center, "
        "which is not determined by the degrees"
    )

    rho1: float | None = None
    rho0: float | None = None
    if model.family is ModelFamily.CPQ:
        sign_class = "zero" if all(a == 1 for a in profile.degrees) else "negative"
    elif model.family is ModelFamily.QUADRIC:
        a_n = profile.degrees[0]
        if a_n >= 2:
            rho1, rho0 = rho_thresholds(model.n, a_n, lam)
            alt = _rho1_without_degree_factor(model.n, lam)
            notes.append(
                f"rho1 includes the conservative degree factor; without it rho1 would be {alt!r}"
            )
            if rho < rho0:
                sign_class = "zero" if a_n == 2 else "negative"
            else:
                sign_class = "uncontrolled"
                notes.append("rho is not below rho0, so the sign of M is not certified")
        else:
            sign_class = "uncontrolled"
    else:
        sign_class = "uncontrolled"

    if sign_class == "zero" and abs(breakdown.M) > max(10.0 * breakdown.error_estimate, 1e-12):
        raise InconsistencyError(
            f"classification says M = 0 but the assembly produced M={breakdown.M!r}"
        )

    return BoundReport(
        model=model,
        n=model.n,
        q=model.q,
        lam=lam,
        rho=rho,
        profile=profile,
        mu1_model=solution.mu1,
        M=breakdown.M,
        bound=solution.mu1 + breakdown.M,
        sign_class=sign_class,
        rho1=rho1,
        rho0=rho0,
        warnings=tuple(notes),
    )
