"""Catalog of the constant-curvature model centers and their tube geometry.

Exactly five families of complex submanifolds of complex projective space
have principal curvatures independent of both the point and the normal
direction.  Each is described here by its ambient complex dimension ``n``,
its own complex dimension ``q`` and the count ``zc`` of principal curvature
magnitudes equal to ``sqrt(lam)`` (the remaining ``q - zc`` vanish).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError


class ModelFamily(str, Enum):
    CPQ = "cpq"
    QUADRIC = "quadric"
    SEGRE = "segre"
    SU5 = "su5"
    SO10 = "so10"


@dataclass(frozen=True)
class ModelDescriptor:
    """One member of the model catalog, with its tube cut radius.

    ``cut_radius`` is the first positive zero of the model tube density for
    the curvature parameter the descriptor was built with; it is stored in
    closed form (pi/(2 sqrt(lam)) when zc = 0, else pi/(4 sqrt(lam))) rather
    than root-found.
    """

    family: ModelFamily
    n: int
    q: int
    zc: int
    cut_radius: float


@dataclass(frozen=True)
class CurvatureVector:
    """Magnitudes of the q principal curvature pairs in one normal direction."""

    k: tuple[float, ...]

    def __post_init__(self) -> None:
        for i, ki in enumerate(self.k):
            if not math.isfinite(ki) or ki < 0:
                raise DomainError(f"curvature magnitude {i} must be finite and >= 0, got {ki!r}")

    def __len__(self) -> int:
        return len(self.k)


def cut_radius_for(zc: int, lam: float) -> float:
    """First positive zero of the model tube density: set by c when zc = 0, by c4 otherwise."""
    if lam <= 0:
        raise DomainError(f"model geometry requires lam > 0, got {lam!r}")
    if zc == 0:
        return math.pi / (2.0 * math.sqrt(lam))
    return math.pi / (4.0 * math.sqrt(lam))


def make_model(
    family: ModelFamily | str,
    lam: float,
    n: int | None = None,
    q: int | None = None,
) -> ModelDescriptor:
    """Build a model descriptor, validating the family's dimensional constraints.

    CPQ needs both n and q (1 <= q <= n-1).  QUADRIC needs n >= 2 and fixes
    q = n-1.  SEGRE needs odd n = 2m-1 >= 5 and fixes q = (n+1)/2.  SU5 and
    SO10 are the two exceptional members with (n, q) = (9, 6) and (15, 10).
    """
    family = ModelFamily(family)
    if lam <= 0:
        raise DomainError(f"model constructors require lam > 0, got {lam!r}")

    if family is ModelFamily.CPQ:
        if n is None or q is None:
            raise DomainError("the totally geodesic family needs explicit n and q")
        if not 1 <= q <= n - 1:
            raise DomainError(f"need 1 <= q <= n-1, got n={n}, q={q}")
        zc = 0
    elif family is ModelFamily.QUADRIC:
        if n is None:
            raise DomainError("the hyperquadric needs an ambient dimension n")
        if n < 2:
            raise DomainError(f"the hyperquadric needs n >= 2, got n={n}")
        if q is not None and q != n - 1:
            raise DomainError(f"the hyperquadric has q = n-1, got q={q}")
        q = n - 1
        zc = n - 1
    elif family is ModelFamily.SEGRE:
        if n is None:
            raise DomainError("the product family needs an ambient dimension n")
        if n < 5 or n % 2 == 0:
            raise DomainError(f"the product family needs odd n = 2m-1 >= 5, got n={n}")
        m = (n + 1) // 2
        if q is not None and q != m:
            raise DomainError(f"the product family has q = (n+1)/2 = {m}, got q={q}")
        q = m
        zc = 2
    elif family is ModelFamily.SU5:
        if (n is not None and n != 9) or (q is not None and q != 6):
            raise DomainError("the SU(5) homogeneous member has (n, q) = (9, 6)")
        n, q, zc = 9, 6, 4
    else:
        if (n is not None and n != 15) or (q is not None and q != 10):
            raise DomainError("the SO(10) homogeneous member has (n, q) = (15, 10)")
        n, q, zc = 15, 10, 6

    return ModelDescriptor(family=family, n=n, q=q, zc=zc, cut_radius=cut_radius_for(zc, lam))


def model_curvatures(model: ModelDescriptor, lam: float) -> CurvatureVector:
    """The model's principal curvature magnitudes: zc copies of sqrt(lam), then zeros."""
    if lam <= 0:
        raise DomainError(f"model curvatures require lam > 0, got {lam!r}")
    root = math.sqrt(lam)
    return CurvatureVector(k=(root,) * model.zc + (0.0,) * (model.q - model.zc))
