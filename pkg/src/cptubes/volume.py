"""Tube volumes around a center, normalized by the center's own volume.

The quotient vol(tube of radius rho)/vol(P) depends only on the dimensions
and the degrees.  Radially it is a sum of integrals of s^(2a-1) c^(2b+1)
with integer exponents, which the substitution u = lam s^2 turns into exact
polynomials in x = lam s(rho)^2.  Coefficients are accumulated as exact
rationals and evaluated once at the end.
"""

from __future__ import annotations

import math
import warnings as _warnings
from fractions import Fraction
from math import comb

import numpy as np

from .degrees import DegreeProfile, ab_volume_coeff
from .errors import DomainError


def _volume_polynomial(n: int, q: int, profile: DegreeProfile) -> dict[int, Fraction]:
    """Exact coefficients of x^p in the ratio, up to the (pi/lam)^(n-q) prefactor."""
    poly: dict[int, Fraction] = {}
    for i in range(q + 1):
        av = ab_volume_coeff(n, q, profile, i)
        if av == 0:
            continue
        alpha = n - q + i
        bpow = q - i
        for m in range(bpow + 1):
            p = alpha + m
            sign = -1 if m % 2 else 1
            poly[p] = poly.get(p, Fraction(0)) + av * Fraction(sign * comb(bpow, m), 2 * p)
    return poly


def tube_volume_density(n: int, q: int, profile: DegreeProfile, lam: float, r):
    """Radial derivative of the volume ratio; negative past the focal distance.

    Accepts scalar or ndarray r.
    """
    if (profile.n, profile.q) != (n, q):
        raise DomainError(
            f"profile dimensions ({profile.n}, {profile.q}) do not match ({n}, {q})"
        )
    rr = np.asarray(r, dtype=float)
    root = math.sqrt(lam)
    s = np.sin(root * rr) / root
    c = np.cos(root * rr)
    base = s ** (2 * (n - q) - 1) * c ** (2 * q + 1)
    ta2 = np.where(c != 0.0, (s / c) ** 2, 0.0)
    out = np.zeros_like(rr)
    weight = base.copy()
    for i in range(q + 1):
        av = float(ab_volume_coeff(n, q, profile, i))
        if av:
            out = out + av * math.pi ** (n - q) * lam**i * weight
        weight = weight * ta2
    return out if out.ndim else float(out)


def tube_volume_ratio(n: int, q: int, profile: DegreeProfile, lam: float, rho: float) -> float:
    """vol(tube of radius rho)/vol(P) in closed form.

    Valid for rho up to pi/(2 sqrt(lam)); a warning is raised if the radial
    density turns negative before rho, which signals that rho has passed the
    focal distance consistent with the degrees.
    """
    if (profile.n, profile.q) != (n, q):
        raise DomainError(
            f"profile dimensions ({profile.n}, {profile.q}) do not match ({n}, {q})"
        )
    if lam <= 0:
        raise DomainError(f"volume ratios require lam > 0, got {lam!r}")
    half_period = math.pi / (2.0 * math.sqrt(lam))
    if not 0.0 < rho <= half_period * (1.0 + 1e-12):
        raise DomainError(f"need 0 < rho <= {half_period!r}, got rho={rho!r}")

    sample = np.linspace(0.0, rho, 513)
    density = tube_volume_density(n, q, profile, lam, sample)
    # tolerance absorbs roundoff of the density zero at the half-period endpoint
    if np.any(density < -1e-15 * np.max(np.abs(density))):
        _warnings.warn(
            "tube density is negative inside [0, rho]: rho exceeds the focal "
            "distance consistent with the degrees; the ratio is no longer a volume"
        )

    s_rho = math.sin(math.sqrt(lam) * rho) / math.sqrt(lam)
    x = min(lam * s_rho * s_rho, 1.0)
    poly = _volume_polynomial(n, q, profile)
    total = math.fsum(float(coeff) * x**p for p, coeff in sorted(poly.items()))
    return (math.pi / lam) ** (n - q) * total
