import pytest

from cptubes import RadialProblem, make_model, solve_mu1


@pytest.fixture(scope="session")
def solved():
    """Session cache of spectral solutions keyed by the problem data."""
    cache = {}

    def get(family, lam, rho, n=None, q=None, tol=1e-10):
        key = (family, lam, rho, n, q, tol)
        if key not in cache:
            model = make_model(family, lam, n=n, q=q)
            cache[key] = solve_mu1(RadialProblem(model, lam, rho), tol=tol)
        return cache[key]

    return get
