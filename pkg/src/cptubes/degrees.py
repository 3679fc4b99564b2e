"""Exact combinatorics of the defining-polynomial degrees.

A center of complex dimension q in ambient dimension n is cut out by
n - q homogeneous polynomials; only their degrees enter the eigenvalue
bound.  The carrier of that data is the complete homogeneous symmetric sum

    beta_c = sum over multisets {j_1 <= ... <= j_c} of (a_{j_1}-1)...(a_{j_c}-1)

of the shifted degrees, computed here in exact integer arithmetic.  The
curvature parameter never enters these tables numerically: every quantity
is an integer or rational paired with a recorded power of lam, evaluated in
floating point only at the last moment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError
from .models import CurvatureVector


@dataclass(frozen=True)
class DegreeProfile:
    """Degrees of the n - q polynomials cutting out the center."""

    n: int
    q: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n - self.q < 1:
            raise DomainError(f"need n - q >= 1, got n={self.n}, q={self.q}")
        if len(self.degrees) != self.n - self.q:
            raise DomainError(
                f"expected {self.n - self.q} degrees for (n, q)=({self.n}, {self.q}), "
                f"got {len(self.degrees)}"
            )
        for a in self.degrees:
            if not isinstance(a, int) or a < 1:
                raise DomainError(f"degrees must be integers >= 1, got {a!r}")


@dataclass(frozen=True)
class CoefficientTable:
    """Exact beta values and the rational lam-power coefficients derived from them.

    ``ab_ratio[i]`` is the rational rho_i with a(i)b(i)/(a(0)b(0)) = rho_i * lam^i.
    """

    beta: tuple[int, ...]
    ab_ratio: tuple[Fraction, ...]


def beta_table(profile: DegreeProfile) -> list[int]:
    """All beta_0..beta_q as exact integers.

    Complete homogeneous sums obey h_c(v_1..v_m) = h_c(v_1..v_{m-1})
    + v_m h_{c-1}(v_1..v_m), which the in-place forward sweep implements.
    """
    shifted = [a - 1 for a in profile.degrees]
    table = [0] * (profile.q + 1)
    table[0] = 1
    for v in shifted:
        for c in range(1, profile.q + 1):
            table[c] += v * table[c - 1]
    return table


def beta(profile: DegreeProfile, c: int) -> int:
    """Complete homogeneous symmetric sum of the shifted degrees, order c."""
    if not 0 <= c <= profile.q:
        raise DomainError(f"beta order must satisfy 0 <= c <= q={profile.q}, got {c}")
    return beta_table(profile)[c]


def ab_ratio(n: int, q: int, profile: DegreeProfile, i: int) -> Fraction:
    """Rational coefficient of lam^i in a(i)b(i)/(a(0)b(0)).

    Equals (-1)^i C(n-1, q-i)/C(n-1, q) * beta_i; the caller supplies lam^i.
    """
    if not 0 <= i <= q:
        raise DomainError(f"index must satisfy 0 <= i <= q={q}, got {i}")
    if (profile.n, profile.q) != (n, q):
        raise DomainError(
            f"profile dimensions ({profile.n}, {profile.q}) do not match ({n}, {q})"
        )
    sign = -1 if i % 2 else 1
    return Fraction(sign * comb(n - 1, q - i) * beta(profile, i), comb(n - 1, q))


def coefficient_table(n: int, q: int, profile: DegreeProfile) -> CoefficientTable:
    """Beta table plus all ab ratios for i = 0..q."""
    betas = tuple(beta_table(profile))
    c_nq = comb(n - 1, q)
    ratios = tuple(
        Fraction((-1 if i % 2 else 1) * comb(n - 1, q - i) * betas[i], c_nq)
        for i in range(q + 1)
    )
    return CoefficientTable(beta=betas, ab_ratio=ratios)


def ab_volume_coeff(n: int, q: int, profile: DegreeProfile, i: int) -> Fraction:
    """Exact coefficient of pi^(n-q) lam^i in a(i) b(i)/vol(P).

    Equals (-1)^i 2 q! beta_i / ((q-i)! (n-q+i-1)!); the tube-volume formula
    multiplies it by the closed-form radial integral.
    """
    if not 0 <= i <= q:
        raise DomainError(f"index must satisfy 0 <= i <= q={q}, got {i}")
    sign = -1 if i % 2 else 1
    num = sign * 2 * _factorial(q) * beta(profile, i)
    den = _factorial(q - i) * _factorial(n - q + i - 1)
    return Fraction(num, den)


def _factorial(m: int) -> int:
    out = 1
    for j in range(2, m + 1):
        out *= j
    return out


def psi(k: CurvatureVector, c: int) -> float:
    """Signed elementary symmetric function of the squared curvatures.

    psi(k, c) = (-1)^c e_c(k_1^2, ..., k_q^2); the coefficients of the tube
    density expansion in powers of ta^2.
    """
    if not 0 <= c <= len(k):
        raise DomainError(f"order must satisfy 0 <= c <= {len(k)}, got {c}")
    e = [0.0] * (c + 1)
    e[0] = 1.0
    for ki in k.k:
        k2 = ki * ki
        for j in range(c, 0, -1):
            e[j] += k2 * e[j - 1]
    return (-1.0 if c % 2 else 1.0) * e[c]


def quadric_binomial_identity(n: int, i: int) -> bool:
    """Exact check of (i-(n-1)) C(n-1, n-1-i) = -(i+1) C(n-1, n-2-i)."""
    if not 0 <= i <= n - 2:
        raise DomainError(f"need 0 <= i <= n-2={n - 2}, got {i}")
    lhs = (i - (n - 1)) * comb(n - 1, n - 1 - i)
    rhs = -(i + 1) * comb(n - 1, n - 2 - i)
    return lhs == rhs


def gamma_generating_check(profile: DegreeProfile) -> bool:
    """Exact check that sum_c (-1)^c beta_c x^c inverts prod_j (1 + (a_j-1) x).

    The product is taken modulo x^(q+1); the result must be the constant 1.
    """
    q = profile.q
    alternating = [(-1 if c % 2 else 1) * b for c, b in enumerate(beta_table(profile))]
    prod = [0] * (q + 1)
    prod[0] = 1
    for a in profile.degrees:
        v = a - 1
        for c in range(q, 0, -1):
            prod[c] += v * prod[c - 1]
    full = [0] * (q + 1)
    for c1, x in enumerate(alternating):
        for c2, y in enumerate(prod):
            if c1 + c2 <= q:
                full[c1 + c2] += x * y
    return full[0] == 1 and all(v == 0 for v in full[1:])
