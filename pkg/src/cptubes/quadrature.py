"""Composite Gauss-Legendre quadrature on fixed panel decompositions.

All tube integrals in this package are smooth on the closed interval, so a
fixed composite rule with a panel-halving comparison gives both the value
and a usable error estimate while keeping every run bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PanelRule:
    """Nodes and weights of a composite Gauss rule on [a, b]."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(values, self.weights))


def panel_edges(a: float, b: float, panels: int, refine_right: int = 0) -> np.ndarray:
    """Uniform panel edges, optionally with geometric halving toward b.

    Refinement resolves densities whose c4 denominator nearly vanishes just
    past the right endpoint.
    """
    edges = np.linspace(a, b, panels + 1)
    if refine_right <= 0:
        return edges
    extra = []
    left, right = edges[-2], edges[-1]
    for _ in range(refine_right):
        left = 0.5 * (left + right)
        extra.append(left)
    return np.concatenate([edges[:-1], np.asarray(extra), [right]])


def gauss_rule(a: float, b: float, panels: int, order: int = 16, refine_right: int = 0) -> PanelRule:
    """Composite Gauss-Legendre rule with `panels` uniform panels of given order."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = panel_edges(a, b, panels, refine_right)
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return PanelRule(nodes=nodes, weights=weights)
