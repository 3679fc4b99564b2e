"""Tube densities and the Weingarten trace of tubular hypersurfaces.

The radial density of a tube of radius r around a q-dimensional center in
ambient complex dimension n is

    theta(r) = s^(2n-2q-1) * c * prod_j (c^2 - s^2 k_j^2),

and the mean-curvature data of the tubular hypersurface enters the radial
Laplacian through

    trace(S)(r) = 2 s c h(r) - (2n-2q-1) c/s + lam s/c,
    h(r) = sum_j (lam + k_j^2) / (c^2 - k_j^2 s^2),

which equals -(log theta)'(r).  For the model centers h simplifies to
``h c^2 = zc lam / c4 + q lam``.

``theta_model`` and ``theta_general`` accept scalar or ndarray radii.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .models import CurvatureVector, ModelDescriptor, cut_radius_for
from .trig import trig


def h_general(k: CurvatureVector, lam: float, r: float) -> float:
    """Sum of (lam + k_i^2)/(c^2 - k_i^2 s^2); defined inside the focal radius."""
    t = trig(lam, r)
    total = 0.0
    for i, ki in enumerate(k.k):
        denom = t.c * t.c - ki * ki * t.s * t.s
        if denom <= 0.0:
            raise DomainError(
                f"focal radius reached or passed at r={r!r} for curvature index {i} (k={ki!r})"
            )
        total += (lam + ki * ki) / denom
    return total


def h_model_c2(model: ModelDescriptor, lam: float, r: float) -> float:
    """h times c^2 for a model center: zc*lam/c4 + q*lam."""
    cut = cut_radius_for(model.zc, lam)
    if r >= cut:
        raise DomainError(f"r={r!r} is not below the cut radius {cut!r}")
    t = trig(lam, r)
    return model.zc * lam / t.c4 + model.q * lam


def weingarten_trace(model: ModelDescriptor, lam: float, r: float) -> float:
    """Trace of the shape operator of the tube boundary at radius r.

    Blows up like -(2n-2q-1)/r at the center and is only defined on
    0 < r < cut.  Equals -(log theta_model)'(r).
    """
    cut = cut_radius_for(model.zc, lam)
    if not 0.0 < r < cut:
        raise DomainError(f"trace is defined for 0 < r < cut={cut!r}, got r={r!r}")
    t = trig(lam, r)
    b = 2 * model.n - 2 * model.q - 1
    hc2 = model.zc * lam / t.c4 + model.q * lam
    return 2.0 * t.ta * hc2 - b * t.c / t.s + lam * t.s / t.c


def theta_model(model: ModelDescriptor, lam: float, r):
    """Radial tube density of a model center: s^(2n-2q-1) c^(2(q-zc)+1) c4^zc.

    Vanishes exactly at the cut radius.  Accepts scalar or ndarray r.
    """
    cut = cut_radius_for(model.zc, lam)
    rr = np.asarray(r, dtype=float)
    if np.any(rr < 0) or np.any(rr > cut * (1.0 + 1e-12)):
        raise DomainError(f"density needs 0 <= r <= cut={cut!r}")
    root = math.sqrt(lam)
    s = np.sin(root * rr) / root
    c = np.cos(root * rr)
    c4 = np.cos(2.0 * root * rr)
    b = 2 * model.n - 2 * model.q - 1
    out = s**b * c ** (2 * (model.q - model.zc) + 1) * c4**model.zc
    return out if out.ndim else float(out)


def theta_general(k: CurvatureVector, n: int, q: int, lam: float, r):
    """Radial tube density for an arbitrary constant curvature vector.

    Used by identity tests and the direct Rayleigh-quotient oracle; may go
    negative past the focal radius.  Accepts scalar or ndarray r.
    """
    if len(k) != q:
        raise DomainError(f"curvature vector has length {len(k)}, expected q={q}")
    rr = np.asarray(r, dtype=float)
    root = math.sqrt(lam)
    s = np.sin(root * rr) / root
    c = np.cos(root * rr)
    b = 2 * n - 2 * q - 1
    out = s**b * c
    for ki in k.k:
        out = out * (c * c - s * s * ki * ki)
    return out if out.ndim else float(out)
