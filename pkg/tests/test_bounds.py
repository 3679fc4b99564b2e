import math

import numpy as np
import pytest
from scipy.integrate import quad

from cptubes import (
    CurvatureVector,
    DegreeProfile,
    DomainError,
    RadialProblem,
    bound_report,
    correction_m,
    correction_m_quadric,
    correction_m_surrogate,
    direct_quotient_oracle,
    make_model,
    model_curvatures,
    quadratures,
    rho_thresholds,
    solve_mu1,
    trig,
    tube_quadratures,
)


def test_quadrature_signs(solved):
    lam = 1.0
    for family, n, q, rho in (("cpq", 3, 2, 0.5), ("quadric", 3, None, 0.4), ("segre", 5, None, 0.4)):
        sol = solved(family, lam, rho, n=n, q=q)
        B, C = quadratures(sol)
        assert len(B) == len(C) == sol.problem.model.q + 1
        assert all(b <= 0.0 for b in B)
        assert all(c > 0.0 for c in C)


def test_quadrature_c0_cross_check(solved):
    lam, rho = 1.0, 0.5
    sol = solved("cpq", lam, rho, n=3, q=2)
    model = sol.problem.model
    tq = tube_quadratures(sol)

    def integrand(r):
        f, _ = sol.eval(r)
        t = trig(lam, r)
        return f * f * t.s ** (2 * model.n - 2 * model.q - 1) * t.c ** (2 * model.q + 1)

    ref, _ = quad(integrand, 0.0, rho, epsabs=1e-14, epsrel=1e-13, limit=200)
    assert tq.C[0] == pytest.approx(ref, rel=1e-8)


def test_quadrature_small_rho_power_law():
    # C_i scales like rho^(2(n-q)+2i) as rho -> 0
    lam = 1.0
    model = make_model("cpq", lam, n=3, q=2)
    sols = {
        rho: solve_mu1(RadialProblem(model, lam, rho), tol=1e-9) for rho in (0.02, 0.04)
    }
    t_small = tube_quadratures(sols[0.02])
    t_big = tube_quadratures(sols[0.04])
    for i in range(model.q + 1):
        expected = 2 * (model.n - model.q) + 2 * i
        measured = math.log2(t_big.C[i] / t_small.C[i])
        assert measured == pytest.approx(expected, abs=0.1)


def test_quadrature_nu_domain_guard():
    lam = 1.0
    model = make_model("cpq", lam, n=2, q=1)
    sol = solve_mu1(RadialProblem(model, lam, 1.2), tol=1e-9)
    with pytest.raises(DomainError):
        tube_quadratures(sol)


def test_equality_case_totally_geodesic(solved):
    lam, rho = 1.0, 0.5
    sol = solved("cpq", lam, rho, n=3, q=2)
    bd = correction_m(sol.problem.model, DegreeProfile(3, 2, (1,)), lam, rho, sol)
    assert abs(bd.M) <= 1e-10
    assert bd.numerator == 0.0


def test_equality_case_quadric(solved):
    lam, rho = 1.0, 0.4
    sol = solved("quadric", lam, rho, n=3)
    bd = correction_m(sol.problem.model, DegreeProfile(3, 2, (2,)), lam, rho, sol)
    assert abs(bd.M) <= 1e-10


def test_gap_sign_totally_geodesic(solved):
    lam, rho = 1.0, 0.3
    sol = solved("cpq", lam, rho, n=2, q=1)
    bd = correction_m(sol.problem.model, DegreeProfile(2, 1, (2,)), lam, rho, sol)
    assert bd.M < -10.0 * bd.error_estimate
    # cross-check magnitude against the direct quotient route: for q = 1 the
    # degree profile is realized by the curvature k = sqrt(lam beta_1/(n-1))
    k = CurvatureVector((math.sqrt(lam * 1.0 / 1.0),))
    oracle = direct_quotient_oracle(sol.problem.model, k, lam, rho, sol, panels=373)
    assert oracle == pytest.approx(sol.mu1 + bd.M, rel=1e-8)


def test_gap_sign_random_profiles(solved):
    rng = np.random.default_rng(9)
    lam, rho = 1.0, 0.5
    sol = solved("cpq", lam, rho, n=4, q=2)
    for _ in range(25):
        degs = tuple(int(d) for d in rng.integers(1, 6, size=2))
        bd = correction_m(sol.problem.model, DegreeProfile(4, 2, degs), lam, rho, sol)
        if all(d == 1 for d in degs):
            assert bd.M == 0.0
        else:
            assert bd.M < -10.0 * bd.error_estimate


def test_quadric_gap_sign(solved):
    lam, rho = 1.0, 0.3
    sol = solved("quadric", lam, rho, n=3)
    for a_n in (3, 4, 5):
        rho1, rho0 = rho_thresholds(3, a_n, lam)
        assert rho < rho0
        bd = correction_m_quadric(3, a_n, lam, rho, sol)
        assert bd.M < -10.0 * bd.error_estimate


def test_quadric_degree_one_positive(solved):
    lam, rho = 1.0, 0.3
    sol = solved("quadric", lam, rho, n=3)
    bd = correction_m_quadric(3, 1, lam, rho, sol)
    assert bd.M > 0.0
    # only the i = 0 term survives: numerator = -lam (n-1) B_0
    assert bd.numerator == pytest.approx(-lam * 2 * bd.B[0], rel=1e-13)


def test_quadric_factored_matches_general(solved):
    lam, rho = 1.0, 0.3
    for n in (2, 3, 4):
        sol = solved("quadric", lam, rho, n=n)
        for a_n in (1, 2, 3, 4, 5):
            general = correction_m(
                sol.problem.model, DegreeProfile(n, n - 1, (a_n,)), lam, rho, sol
            )
            factored = correction_m_quadric(n, a_n, lam, rho, sol)
            scale = max(abs(general.M), 1e-30)
            assert abs(general.M - factored.M) / scale <= 1e-10


def test_denominator_positive(solved):
    lam, rho = 1.0, 0.4
    for family, n, q in (("cpq", 3, 1), ("quadric", 4, None), ("segre", 5, None)):
        sol = solved(family, lam, rho, n=n, q=q)
        model = sol.problem.model
        bd = correction_m(
            model, DegreeProfile(model.n, model.q, (2,) * (model.n - model.q)), lam, rho, sol
        )
        assert bd.denominator > 0.0


def test_oracle_own_curvatures(solved):
    lam, rho = 1.0, 0.3
    for family, n, q in (("cpq", 3, 1), ("quadric", 3, None), ("segre", 5, None)):
        sol = solved(family, lam, rho, n=n, q=q)
        model = sol.problem.model
        kown = model_curvatures(model, lam)
        oracle = direct_quotient_oracle(model, kown, lam, rho, sol)
        assert oracle == pytest.approx(sol.mu1, rel=1e-12)


def test_oracle_zero_curvatures_vs_totally_geodesic(solved):
    lam, rho = 1.0, 0.3
    sol = solved("cpq", lam, rho, n=3, q=2)
    oracle = direct_quotient_oracle(
        sol.problem.model, CurvatureVector((0.0, 0.0)), lam, rho, sol
    )
    bd = correction_m(sol.problem.model, DegreeProfile(3, 2, (1,)), lam, rho, sol)
    assert oracle == pytest.approx(sol.mu1 + bd.M, rel=1e-8)


def test_oracle_zero_curvatures_vs_quadric(solved):
    lam, rho = 1.0, 0.3
    sol = solved("quadric", lam, rho, n=2)
    oracle = direct_quotient_oracle(
        sol.problem.model, CurvatureVector((0.0,)), lam, rho, sol, panels=373
    )
    bd = correction_m(sol.problem.model, DegreeProfile(2, 1, (1,)), lam, rho, sol)
    assert bd.M > 0.0
    assert oracle == pytest.approx(sol.mu1 + bd.M, rel=1e-8)


def test_oracle_surrogate_moments(solved):
    lam, rho = 1.0, 0.3
    sol = solved("cpq", lam, rho, n=3, q=2)
    model = sol.problem.model
    kq = CurvatureVector((math.sqrt(lam),) * 2)
    oracle = direct_quotient_oracle(model, kq, lam, rho, sol, panels=373)
    sur = correction_m_surrogate(model, kq, lam, sol)
    assert oracle == pytest.approx(sol.mu1 + sur.M, rel=1e-8)


def test_oracle_focal_error(solved):
    lam = 1.0
    sol = solved("cpq", lam, 1.2, n=2, q=1)
    with pytest.raises(DomainError):
        direct_quotient_oracle(
            sol.problem.model, CurvatureVector((2.0,)), lam, 1.2, sol
        )


def test_oracle_rejects_mismatched_solution(solved):
    lam = 1.0
    sol = solved("cpq", lam, 0.3, n=3, q=2)
    other = make_model("cpq", lam, n=3, q=1)
    with pytest.raises(DomainError):
        direct_quotient_oracle(other, CurvatureVector((0.0,)), lam, 0.3, sol)


def test_rho_thresholds_examples():
    rho1, rho0 = rho_thresholds(3, 2, 1.0)
    assert rho1 == pytest.approx(math.pi / 4.0, rel=1e-14)
    assert rho0 == pytest.approx(math.pi / 4.0, rel=1e-14)

    rho1, rho0 = rho_thresholds(4, 3, 1.0)
    assert rho1 == pytest.approx(math.atan(0.5), rel=1e-14)
    assert rho0 == pytest.approx(math.atan(0.5), rel=1e-14)

    rho1, rho0 = rho_thresholds(2, 4, 1.0)
    assert math.isinf(rho1)
    assert rho0 == pytest.approx(math.pi / 4.0, rel=1e-14)


def test_rho_thresholds_scaling():
    for s in (0.5, 2.0):
        a, _ = rho_thresholds(5, 3, 1.0)
        b, _ = rho_thresholds(5, 3, 1.0 / s**2)
        assert b == pytest.approx(s * a, rel=1e-13)


def test_rho_thresholds_degree_guard():
    with pytest.raises(DomainError):
        rho_thresholds(3, 1, 1.0)


def test_correction_scaling_covariance(solved):
    lam, rho, s = 1.0, 0.4, 2.0
    sol = solved("quadric", lam, rho, n=3)
    bd = correction_m(sol.problem.model, DegreeProfile(3, 2, (3,)), lam, rho, sol)
    sol2 = solved("quadric", lam / s**2, s * rho, n=3)
    bd2 = correction_m(sol2.problem.model, DegreeProfile(3, 2, (3,)), lam / s**2, s * rho, sol2)
    assert bd2.M == pytest.approx(bd.M / s**2, rel=1e-8)


def test_bound_report_equality_case():
    report = bound_report(make_model("cpq", 1.0, n=2, q=1), DegreeProfile(2, 1, (1,)), 1.0, 0.5)
    assert report.sign_class == "zero"
    assert report.M == 0.0
    assert report.bound == report.mu1_model
    assert report.rho1 is None and report.rho0 is None


def test_bound_report_quadric_gap():
    report = bound_report(make_model("quadric", 1.0, n=2), DegreeProfile(2, 1, (3,)), 1.0, 0.3)
    assert report.sign_class == "negative"
    assert report.bound < report.mu1_model
    assert report.rho0 == pytest.approx(math.pi / 4.0)


def test_bound_report_uncontrolled_cases():
    report = bound_report(make_model("quadric", 1.0, n=2), DegreeProfile(2, 1, (1,)), 1.0, 0.3)
    assert report.sign_class == "uncontrolled"
    assert report.M > 0.0
    seg = bound_report(make_model("segre", 1.0, n=5), DegreeProfile(5, 3, (1, 2)), 1.0, 0.3)
    assert seg.sign_class == "uncontrolled"


def test_bound_report_cross_model_instance(solved):
    lam, rho = 1.0, 0.3
    solq = solved("quadric", lam, rho, n=2)
    solc = solved("cpq", lam, rho, n=2, q=1)
    bd_c = correction_m(solc.problem.model, DegreeProfile(2, 1, (2,)), lam, rho, solc)
    bd_q = correction_m(solq.problem.model, DegreeProfile(2, 1, (1,)), lam, rho, solq)
    assert solq.mu1 <= solc.mu1 + bd_c.M + 1e-9 * solq.mu1
    assert solc.mu1 <= solq.mu1 + bd_q.M + 1e-9 * solc.mu1


def test_correction_rejects_mismatched_profile(solved):
    lam, rho = 1.0, 0.3
    sol = solved("quadric", lam, rho, n=3)
    with pytest.raises(DomainError):
        correction_m(sol.problem.model, DegreeProfile(3, 1, (2, 2)), lam, rho, sol)
