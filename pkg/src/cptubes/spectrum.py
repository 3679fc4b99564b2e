"""First Dirichlet eigenvalue of a model tube via the radial problem.

Radial functions on a model tube satisfy

    -f'' + trace(S) f' = mu f,      f'(0) = 0,  f(rho) = 0,

with a regular singular point at r = 0 where trace(S) ~ -(2n-2q-1)/r.
``solve_mu1`` shoots from a two-term series start at a tiny offset and
brackets the boundary value in mu; the candidate is accepted as the FIRST
eigenvalue only when the trial solution has no interior sign change.
``solve_mu1_fd`` is an independent check exploiting the divergence form
-(theta f')' = mu theta f, discretized as a generalized symmetric
tridiagonal eigenproblem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq
from scipy.special import jn_zeros

from .errors import BracketError, DomainError, InconsistencyError
from .models import ModelDescriptor, cut_radius_for
from .trig import trig

GRID_POINTS = 2049
_START_FRACTION = 1e-6
_IVP_RTOL = 1e-11
_IVP_ATOL = 1e-14
_SCAN_POINTS = 513
NU_DOMAIN_FACTOR = 0.999


@dataclass(frozen=True)
class RadialProblem:
    """A model center, curvature parameter and tube radius."""

    model: ModelDescriptor
    lam: float
    rho: float

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise DomainError(f"radial problems require lam > 0, got {self.lam!r}")
        cut = cut_radius_for(self.model.zc, self.lam)
        if not 0.0 < self.rho < cut:
            raise DomainError(
                f"tube radius must satisfy 0 < rho < cut={cut!r}, got rho={self.rho!r}"
            )
        if not 1 <= self.model.q <= self.model.n - 1:
            raise DomainError(f"need 1 <= q <= n-1, got n={self.model.n}, q={self.model.q}")

    @property
    def cut_radius(self) -> float:
        return cut_radius_for(self.model.zc, self.lam)


@dataclass(frozen=True)
class SpectralSolution:
    """First eigenvalue with the eigenfunction sampled on a uniform grid.

    The eigenfunction is normalized to f(0) = 1; ``fprime`` holds its
    derivative at the same radii.  ``achieved_tol`` is the relative
    eigenvalue tolerance actually delivered by the bracketing.
    """

    problem: RadialProblem
    mu1: float
    grid: np.ndarray
    f: np.ndarray
    fprime: np.ndarray
    achieved_tol: float
    _dense: object = field(repr=False, compare=False, default=None)
    _eps: float = field(repr=False, compare=False, default=0.0)

    def eval(self, r) -> tuple[np.ndarray, np.ndarray]:
        """Interpolate (f, f') anywhere on [0, rho] with solver accuracy."""
        scalar = np.ndim(r) == 0
        rr = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(rr < 0) or np.any(rr > self.problem.rho * (1 + 1e-12)):
            raise DomainError("evaluation radius beyond the solution grid")
        rr_clip = np.minimum(rr, self.problem.rho)
        f = np.empty_like(rr_clip)
        fp = np.empty_like(rr_clip)
        inner = rr_clip <= self._eps
        if np.any(inner):
            d = 2 * (self.problem.model.n - self.problem.model.q)
            ri = rr_clip[inner]
            f[inner] = 1.0 - self.mu1 * ri * ri / (2.0 * d)
            fp[inner] = -self.mu1 * ri / d
        if np.any(~inner):
            vals = self._dense(rr_clip[~inner])
            f[~inner] = vals[0]
            fp[~inner] = vals[1]
        if scalar:
            return float(f[0]), float(fp[0])
        return f, fp


def _trace_callable(model: ModelDescriptor, lam: float):
    n, q, zc = model.n, model.q, model.zc
    b = 2 * n - 2 * q - 1
    root = math.sqrt(lam)

    def trace(r: float) -> float:
        x = root * r
        s = math.sin(x) / root
        c = math.cos(x)
        c4 = math.cos(2.0 * x)
        hc2 = zc * lam / c4 + q * lam
        return 2.0 * (s / c) * hc2 - b * c / s + lam * s / c

    return trace


def _shoot(problem: RadialProblem, mu: float, dense: bool = False, t_eval=None):
    """Integrate the radial equation from the series start at eps to rho."""
    model, lam, rho = problem.model, problem.lam, problem.rho
    d = 2 * (model.n - model.q)
    eps = _START_FRACTION * rho
    f0 = 1.0 - mu * eps * eps / (2.0 * d)
    fp0 = -mu * eps / d
    trace = _trace_callable(model, lam)

    def rhs(r, y):
        return (y[1], trace(r) * y[1] - mu * y[0])

    sol = solve_ivp(
        rhs,
        (eps, rho),
        (f0, fp0),
        method="DOP853",
        rtol=_IVP_RTOL,
        atol=_IVP_ATOL,
        dense_output=dense,
        t_eval=t_eval,
    )
    if not sol.success:
        raise BracketError(f"radial integration failed at mu={mu!r}: {sol.message}")
    return sol, eps


def _boundary_and_zero_count(problem: RadialProblem, mu: float) -> tuple[float, int]:
    scan = np.linspace(_START_FRACTION * problem.rho, problem.rho, _SCAN_POINTS)
    sol, _ = _shoot(problem, mu, t_eval=scan)
    f = sol.y[0]
    signs = np.sign(f)
    changes = int(np.sum(signs[:-1] * signs[1:] < 0))
    return float(f[-1]), changes


def solve_mu1(problem: RadialProblem, tol: float = 1e-10, mu_ceiling_factor: float = 1e6) -> SpectralSolution:
    """First Dirichlet eigenvalue and eigenfunction of a model tube.

    Parameters
    ----------
    problem : RadialProblem
        Model, curvature parameter and tube radius (rho below the cut radius).
    tol : float
        Target relative tolerance on the eigenvalue, at least 1e-12.
    mu_ceiling_factor : float
        The bracket search aborts with a diagnostic once mu exceeds this
        multiple of the flat-disk eigenvalue scale.

    The bracketing ladder certifies the ground state by requiring the trial
    solution at the top of the bracket to change sign exactly once; brackets
    whose trial oscillates are rejected and halved.
    """
    if tol < 1e-12:
        raise DomainError(f"tolerance must be >= 1e-12, got {tol!r}")
    rho = problem.rho
    order = problem.model.n - problem.model.q - 1
    mu_scale = (jn_zeros(order, 1)[0] / rho) ** 2
    ceiling = mu_ceiling_factor * mu_scale

    lo, f_lo = 0.0, 1.0
    hi = 0.4 * mu_scale
    for _ in range(200):
        f_hi, zeros = _boundary_and_zero_count(problem, hi)
        if f_hi <= 0.0 and zeros <= 1:
            break
        if f_hi > 0.0 and zeros == 0:
            lo, f_lo = hi, f_hi
            hi *= 1.35
        else:
            hi = 0.5 * (lo + hi)
        if hi > ceiling:
            raise BracketError(
                f"no first-eigenvalue bracket found below mu={ceiling!r} "
                f"(flat scale {mu_scale!r})"
            )
    else:
        raise BracketError("bracket search did not settle within 200 iterations")

    def boundary_value(mu: float) -> float:
        sol, _ = _shoot(problem, mu)
        return float(sol.y[0][-1])

    rtol_b = max(4 * np.finfo(float).eps, tol)
    mu1 = brentq(boundary_value, lo, hi, xtol=1e-14 * mu_scale, rtol=rtol_b)

    sol, eps = _shoot(problem, mu1, dense=True)
    grid = np.linspace(0.0, rho, GRID_POINTS)
    f = np.empty(GRID_POINTS)
    fp = np.empty(GRID_POINTS)
    f[0], fp[0] = 1.0, 0.0
    vals = sol.sol(grid[1:])
    f[1:], fp[1:] = vals[0], vals[1]

    fmax = float(np.max(np.abs(f)))
    achieved = max(rtol_b, abs(f[-1]) / fmax)
    if abs(f[-1]) > 1e-6 * fmax:
        raise InconsistencyError(f"boundary value did not converge: f(rho)={f[-1]!r}")
    if np.any(f[:-1] <= 0.0):
        raise InconsistencyError("trial accepted as ground state but f has an interior zero")
    if np.any(fp[1:] >= 0.0):
        raise InconsistencyError("ground-state derivative must be negative on (0, rho]")

    return SpectralSolution(
        problem=problem,
        mu1=float(mu1),
        grid=grid,
        f=f,
        fprime=fp,
        achieved_tol=float(achieved),
        _dense=sol.sol,
        _eps=eps,
    )


def solve_mu1_fd(problem: RadialProblem, N: int) -> float:
    """Finite-difference eigenvalue oracle on an N-cell grid.

    Fluxes use the density at cell faces, so the vanishing of theta at r = 0
    imposes the natural boundary condition; the Dirichlet face at rho is
    handled with a half-cell stencil.  Second-order accurate in 1/N.
    """
    if N < 100:
        raise DomainError(f"the singular endpoint needs N >= 100 cells, got {N}")
    from .geometry import theta_model

    model, lam, rho = problem.model, problem.lam, problem.rho
    h = rho / N
    faces = np.linspace(0.0, rho, N + 1)
    theta_faces = theta_model(model, lam, faces)
    centers = 0.5 * (faces[:-1] + faces[1:])
    theta_cells = theta_model(model, lam, centers)
    if np.any(theta_cells <= 0.0):
        raise DomainError("tube density must be positive at all cell centers")

    diag = (theta_faces[:-1] + theta_faces[1:]) / (h * h)
    diag[-1] = (theta_faces[-2] + 2.0 * theta_faces[-1]) / (h * h)
    off = -theta_faces[1:-1] / (h * h)

    scale = 1.0 / np.sqrt(theta_cells)
    d = diag * scale * scale
    e = off * scale[:-1] * scale[1:]
    vals = eigh_tridiagonal(d, e, select="i", select_range=(0, 0), eigvals_only=True)
    return float(vals[0])


def eigenfunction_weights(solution: SpectralSolution, r: float) -> tuple[float, float]:
    """The two radial weight densities of the bound assembly at radius r.

    Returns (weight_mu, weight_nu) with

        weight_mu = f^2 s^(2n-2q-1) c^(2q+1),
        weight_nu = (f^2)' s^(2n-2q-1) c^(2q) / c4.

    The nu weight needs c4 > 0, i.e. r below pi/(4 sqrt(lam)); beyond that
    the caller must restrict the tube radius.
    """
    problem = solution.problem
    if not 0.0 <= r <= problem.rho:
        raise DomainError(f"radius {r!r} is outside the solution grid [0, {problem.rho!r}]")
    model, lam = problem.model, problem.lam
    t = trig(lam, r)
    b = 2 * model.n - 2 * model.q - 1
    f, fp = solution.eval(r)
    wmu = f * f * t.s**b * t.c ** (2 * model.q + 1)
    if t.c4 <= 0.0:
        raise DomainError(
            f"nu weight undefined at r={r!r}: c4 <= 0; restrict rho below "
            f"{math.pi / (4.0 * math.sqrt(lam))!r}"
        )
    wnu = 2.0 * f * fp * t.s**b * t.c ** (2 * model.q) / t.c4
    return float(wmu), float(wnu)
