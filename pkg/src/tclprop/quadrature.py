"""Composite Gauss-Legendre rules for single and nested time integrals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre node count per panel and number of panels per interval."""

    rule_order: int = 4
    panels: int = 1

    def __post_init__(self):
        if self.rule_order < 2:
            raise ValueError(f"rule_order must be >= 2, got {self.rule_order}")
        if self.panels < 1:
            raise ValueError(f"panels must be >= 1, got {self.panels}")

    def nodes(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights for integrating over ``[a, b]``."""
        x, w = _legendre(self.rule_order)
        edges = np.linspace(a, b, self.panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return nodes, weights


def integrate(f, a: float, b: float, quad: QuadratureSpec):
    """Integrate ``f`` (scalar- or array-valued) over ``[a, b]``."""
    nodes, weights = quad.nodes(a, b)
    total = None
    for s, w in zip(nodes, weights):
        term = w * f(s)
        total = term if total is None else total + term
    return total


def nested_integral_terms(h, t0: float, t: float, quad: QuadratureSpec):
    """First- and second-order time integrals of a matrix function.

    Returns ``(first, second)`` with

        first  = int_{t0}^{t} h(s) ds
        second = int_{t0}^{t} ds int_{t0}^{s} ds1 h(s) h(s1)

    The inner integral is summed before multiplying, so each outer node
    costs one matrix product.
    """
    outer, w_outer = quad.nodes(t0, t)
    first = None
    second = None
    for s, ws in zip(outer, w_outer):
        hs = h(s)
        inner = integrate(h, t0, s, quad)
        first = ws * hs if first is None else first + ws * hs
        prod = ws * (hs @ inner)
        second = prod if second is None else second + prod
    return first, second
