"""Quadrature rules on [0, 1]: Gauss-Legendre and interpolatory weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

__all__ = ["QuadratureRule", "gauss_rule", "interpolatory_weights", "integrate"]

MAX_GAUSS_POINTS = 32
MAX_INTERPOLATORY_POINTS = 12


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes (strictly increasing, in [0, 1]) with matching weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size == 0:
            raise ValueError("a quadrature rule needs at least one node")
        if np.any(nodes < 0.0) or np.any(nodes > 1.0):
            raise ValueError("nodes must lie in [0, 1]")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.size


def gauss_rule(s: int) -> QuadratureRule:
    """Gauss-Legendre rule with s nodes on [0, 1], exact to degree 2s-1.

    Nodes are found by Newton iteration on the Legendre recurrence from
    Chebyshev-angle initial guesses, then mapped from [-1, 1].
    """
    if not 1 <= s <= MAX_GAUSS_POINTS:
        raise ValueError(f"node count must be in 1..{MAX_GAUSS_POINTS}, got {s}")
    k = np.arange(1, s + 1)
    t = np.cos(np.pi * (k - 0.25) / (s + 0.5))

    def value_and_derivative(t):
        prev = np.ones_like(t)
        cur = t.copy()
        for n in range(2, s + 1):
            prev, cur = cur, ((2 * n - 1) * t * cur - (n - 1) * prev) / n
        return cur, s * (t * cur - prev) / (t * t - 1.0)

    for _ in range(100):
        val, deriv = value_and_derivative(t)
        delta = val / deriv
        t -= delta
        if np.max(np.abs(delta)) < 1e-15:
            break
    _, deriv = value_and_derivative(t)
    weights = 2.0 / ((1.0 - t * t) * deriv * deriv)
    nodes = 0.5 * (t + 1.0)
    order = np.argsort(nodes)
    return QuadratureRule(nodes=nodes[order], weights=0.5 * weights[order])


def interpolatory_weights(nodes) -> QuadratureRule:
    """Rule integrating exactly every polynomial interpolated on the given nodes.

    Weight i is the integral over [0, 1] of the i-th Lagrange cardinal
    polynomial, computed from its monomial expansion.  Restricted to at most
    12 nodes; beyond that the expansion is too ill-conditioned to trust.
    """
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size == 0:
        raise ValueError("nodes must be a nonempty 1-d sequence")
    if nodes.size > MAX_INTERPOLATORY_POINTS:
        raise ValueError(
            f"at most {MAX_INTERPOLATORY_POINTS} nodes supported, got {nodes.size}"
        )
    if np.unique(nodes).size != nodes.size:
        raise ValueError("nodes must be distinct")
    nodes = np.sort(nodes)
    weights = np.empty_like(nodes)
    for i in range(nodes.size):
        others = np.delete(nodes, i)
        coeffs = npoly.polyfromroots(others)
        integral = np.sum(coeffs / np.arange(1, coeffs.size + 1))
        weights[i] = integral / np.prod(nodes[i] - others)
    return QuadratureRule(nodes=nodes, weights=weights)


def integrate(rule: QuadratureRule, f):
    """Apply the rule to f, componentwise for vector-valued f."""
    values = np.stack([np.asarray(f(c), dtype=float) for c in rule.nodes])
    out = np.tensordot(rule.weights, values, axes=1)
    return float(out) if out.ndim == 0 else out
