"""Curvature-adapted trigonometric primitives.

For a curvature parameter ``lam >= 0`` the generalized sine and cosine are

    s(r) = sin(sqrt(lam) r) / sqrt(lam),      c(r) = cos(sqrt(lam) r),

with the flat limit ``s(r) = r``, ``c(r) = 1`` at ``lam = 0``.  They satisfy
``s' = c`` and ``c^2 + lam s^2 = 1``.  The double-parameter cosine
``c4 = cos(2 sqrt(lam) r)`` equals ``c^2 - lam s^2 = 2 c^2 - 1`` and shows up
as the denominator of several tube densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class TrigBundle:
    """Values of s, c, ta = s/c and c4 at a single radius."""

    r: float
    s: float
    c: float
    c4: float
    ta_value: float | None

    @property
    def ta(self) -> float:
        if self.ta_value is None:
            raise DomainError(
                f"ta is undefined at r={self.r!r}: the generalized cosine vanishes there"
            )
        return self.ta_value


def trig(lam: float, r: float) -> TrigBundle:
    """Evaluate the generalized trigonometric functions at radius r.

    ``lam = 0`` is the flat limit (s = r, c = 1, c4 = 1), kept so that the
    Euclidean Bessel oracle can be expressed with the same primitives.
    """
    if lam < 0:
        raise DomainError(f"curvature parameter must be nonnegative, got {lam!r}")
    if r < 0:
        raise DomainError(f"radius must be nonnegative, got {r!r}")
    if lam == 0:
        return TrigBundle(r=r, s=r, c=1.0, c4=1.0, ta_value=r)
    root = math.sqrt(lam)
    s = math.sin(root * r) / root
    c = math.cos(root * r)
    c4 = math.cos(2.0 * root * r)
    ta = s / c if c != 0.0 else None
    return TrigBundle(r=r, s=s, c=c, c4=c4, ta_value=ta)


def inv_ta(lam: float, value: float) -> float:
    """Inverse of ta on [0, pi/(2 sqrt(lam))); equals arctan in the flat limit."""
    if lam < 0:
        raise DomainError(f"curvature parameter must be nonnegative, got {lam!r}")
    if value < 0:
        raise DomainError(f"inv_ta takes nonnegative arguments, got {value!r}")
    if lam == 0:
        return value
    root = math.sqrt(lam)
    return math.atan(root * value) / root
