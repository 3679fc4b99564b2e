import math

import numpy as np
import pytest
from scipy.special import jn_zeros

from cptubes import (
    BracketError,
    DomainError,
    RadialProblem,
    eigenfunction_weights,
    make_model,
    solve_mu1,
    solve_mu1_fd,
    theta_model,
)
from cptubes.quadrature import gauss_rule

FLAT_LAM = 1e-8


def test_flat_limit_bessel_order0(solved):
    sol = solved("cpq", FLAT_LAM, 1.0, n=2, q=1)
    target = float(jn_zeros(0, 1)[0]) ** 2
    assert sol.mu1 == pytest.approx(target, rel=1e-4)


def test_flat_limit_bessel_order1(solved):
    sol = solved("cpq", FLAT_LAM, 1.0, n=3, q=1)
    target = float(jn_zeros(1, 1)[0]) ** 2
    assert sol.mu1 * 1.0**2 == pytest.approx(target, rel=1e-4)


def test_shooting_vs_fd_quadric(solved):
    lam, rho = 1.0, math.pi / 8.0
    sol = solved("quadric", lam, rho, n=2)
    fd = solve_mu1_fd(RadialProblem(make_model("quadric", lam, n=2), lam, rho), 4000)
    assert abs(sol.mu1 - fd) / fd <= 1e-6


def test_fd_richardson_second_order():
    lam, rho = 1.0, math.pi / 8.0
    prob = RadialProblem(make_model("quadric", lam, n=2), lam, rho)
    m1 = solve_mu1_fd(prob, 500)
    m2 = solve_mu1_fd(prob, 1000)
    m4 = solve_mu1_fd(prob, 2000)
    ratio = (m1 - m2) / (m2 - m4)
    assert ratio == pytest.approx(4.0, rel=0.2)


def test_fd_flat_limit_matches_bessel():
    prob = RadialProblem(make_model("cpq", FLAT_LAM, n=2, q=1), FLAT_LAM, 1.0)
    target = float(jn_zeros(0, 1)[0]) ** 2
    assert solve_mu1_fd(prob, 4000) == pytest.approx(target, rel=1e-4)


def test_fd_domain_monotonicity():
    lam = 1.0
    model = make_model("cpq", lam, n=3, q=2)
    big = solve_mu1_fd(RadialProblem(model, lam, 0.5), 2000)
    small = solve_mu1_fd(RadialProblem(model, lam, 0.3), 2000)
    assert small > big


def test_fd_grid_size_guard():
    prob = RadialProblem(make_model("cpq", 1.0, n=2, q=1), 1.0, 0.5)
    with pytest.raises(DomainError):
        solve_mu1_fd(prob, 50)


def test_eigenvalue_scaling(solved):
    lam, rho = 1.0, 0.4
    base = solved("quadric", lam, rho, n=3)
    for s in (0.5, 2.0):
        scaled = solved("quadric", lam / s**2, s * rho, n=3)
        assert scaled.mu1 == pytest.approx(base.mu1 / s**2, rel=1e-8)


def test_mu1_decreasing_in_rho():
    lam = 1.0
    for family, n, q in (("cpq", 3, 1), ("quadric", 2, None), ("segre", 5, None)):
        model = make_model(family, lam, n=n, q=q)
        ladder = np.linspace(0.25, 0.85, 5) * model.cut_radius
        values = [
            solve_mu1(RadialProblem(model, lam, float(r)), tol=1e-9).mu1 for r in ladder
        ]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_sign_facts_and_boundary(solved):
    sol = solved("quadric", 1.0, 0.5, n=3)
    assert sol.f[0] == 1.0
    assert sol.fprime[0] == 0.0
    assert np.all(sol.f[:-1] > 0.0)
    assert np.all(sol.fprime[1:] < 0.0)
    assert abs(sol.f[-1]) <= sol.achieved_tol * np.max(np.abs(sol.f))


def test_rayleigh_self_consistency(solved):
    lam, rho = 1.0, 0.5
    sol = solved("cpq", lam, rho, n=3, q=1)
    model = sol.problem.model
    rule = gauss_rule(0.0, rho, 256)
    f, fp = sol.eval(rule.nodes)
    theta = theta_model(model, lam, rule.nodes)
    quotient = rule.integrate(theta * fp * fp) / rule.integrate(theta * f * f)
    assert quotient == pytest.approx(sol.mu1, rel=1e-6)


def test_shooting_vs_fd_sample_grid():
    # 3 models x 3 lam x 3 rho fractions at the reference grid size
    worst = 0.0
    for family, n, q in (("cpq", 2, 1), ("quadric", 3, None), ("segre", 5, None)):
        for lam in (0.5, 1.0, 2.0):
            model = make_model(family, lam, n=n, q=q)
            for frac in (0.35, 0.55, 0.75):
                rho = frac * model.cut_radius
                prob = RadialProblem(model, lam, rho)
                mu_shoot = solve_mu1(prob, tol=1e-9).mu1
                mu_fd = solve_mu1_fd(prob, 4000)
                worst = max(worst, abs(mu_shoot - mu_fd) / mu_fd)
    assert worst <= 1e-6


def test_problem_validation():
    model = make_model("quadric", 1.0, n=2)
    with pytest.raises(DomainError):
        RadialProblem(model, 1.0, model.cut_radius)
    with pytest.raises(DomainError):
        RadialProblem(model, 1.0, 0.0)
    with pytest.raises(DomainError):
        RadialProblem(model, -1.0, 0.3)


def test_tolerance_guard():
    prob = RadialProblem(make_model("cpq", 1.0, n=2, q=1), 1.0, 0.5)
    with pytest.raises(DomainError):
        solve_mu1(prob, tol=1e-13)


def test_bracket_ceiling_diagnostic():
    prob = RadialProblem(make_model("cpq", 1.0, n=2, q=1), 1.0, 0.5)
    with pytest.raises(BracketError):
        solve_mu1(prob, mu_ceiling_factor=0.5)


def test_weights_at_endpoints(solved):
    lam, rho = 1.0, 0.5
    sol = solved("quadric", lam, rho, n=2)
    wmu0, wnu0 = eigenfunction_weights(sol, 0.0)
    assert wmu0 == 0.0 and wnu0 == 0.0
    wmu_end, _ = eigenfunction_weights(sol, rho)
    assert abs(wmu_end) <= 1e-16


def test_weights_signs(solved):
    lam, rho = 1.0, 0.5
    sol = solved("quadric", lam, rho, n=2)
    values = [eigenfunction_weights(sol, float(r)) for r in np.linspace(0.01, rho, 40)]
    scale = max(abs(wnu) for _, wnu in values)
    for wmu, wnu in values:
        assert wmu >= 0.0
        # at r = rho the eigenfunction vanishes only to solver tolerance
        assert wnu <= 1e-9 * scale


def test_weights_domain_errors(solved):
    lam = 1.0
    sol = solved("quadric", lam, 0.5, n=2)
    with pytest.raises(DomainError):
        eigenfunction_weights(sol, 0.6)
    # a tube wider than pi/(4 sqrt(lam)) exists for the totally geodesic case
    wide = solved("cpq", lam, 1.2, n=2, q=1)
    with pytest.raises(DomainError):
        eigenfunction_weights(wide, 1.0)


def test_eval_interpolation_consistency(solved):
    sol = solved("quadric", 1.0, 0.5, n=3)
    f, fp = sol.eval(sol.grid)
    assert np.allclose(f, sol.f, rtol=0, atol=1e-12)
    assert np.allclose(fp, sol.fprime, rtol=0, atol=1e-12)
    fs, fps = sol.eval(1e-9)
    assert fs == pytest.approx(1.0, abs=1e-12)
    assert fps == pytest.approx(0.0, abs=1e-6)
