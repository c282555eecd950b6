"""Shifted Legendre polynomials orthonormal on [0, 1] and their antiderivatives.

The basis P_j(x) = sqrt(2j+1) * L_j(2x - 1), with L_j the standard Legendre
polynomial, satisfies int_0^1 P_i P_j dx = delta_ij.  Antiderivatives
I_j(tau) = int_0^tau P_j(x) dx close under the basis:

    I_j = xi_{j+1} P_{j+1} - xi_j P_{j-1}   (j >= 1),
    I_0 = xi_1 P_1 - xi_0 P_0,

with xi_0 = -1/2 and xi_j = 1 / (2 sqrt(4 j^2 - 1)) for j >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PolynomialBasis",
    "eval_legendre",
    "eval_antiderivative",
    "xi",
]


def xi(j: int) -> float:
    """Antiderivative coupling constant: -1/2 for j = 0, else 1/(2 sqrt(4j^2-1))."""
    if j < 0:
        raise ValueError(f"degree must be nonnegative, got {j}")
    if j == 0:
        return -0.5
    return 1.0 / (2.0 * math.sqrt(4.0 * j * j - 1.0))


def _standard_table(jmax: int, t: np.ndarray) -> np.ndarray:
    """Standard Legendre L_0..L_jmax at t via the three-term recurrence."""
    out = np.empty((jmax + 1,) + t.shape, dtype=float)
    out[0] = 1.0
    if jmax >= 1:
        out[1] = t
    for k in range(2, jmax + 1):
        out[k] = ((2 * k - 1) * t * out[k - 1] - (k - 1) * out[k - 2]) / k
    return out


@dataclass(frozen=True)
class PolynomialBasis:
    """Shifted orthonormal Legendre basis with degrees 0..max_degree."""

    max_degree: int = 16

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError(f"max_degree must be nonnegative, got {self.max_degree}")

    def _check(self, j: int) -> None:
        if not 0 <= j <= self.max_degree:
            raise ValueError(
                f"degree {j} out of range for basis with max_degree {self.max_degree}"
            )

    def eval_table(self, jmax: int, x) -> np.ndarray:
        """All P_0(x)..P_jmax(x); shape (jmax+1,) + shape(x)."""
        self._check(jmax)
        x = np.asarray(x, dtype=float)
        table = _standard_table(jmax, 2.0 * x - 1.0)
        scale = np.sqrt(2.0 * np.arange(jmax + 1) + 1.0)
        return table * scale.reshape((jmax + 1,) + (1,) * x.ndim)

    def antiderivative_table(self, jmax: int, tau) -> np.ndarray:
        """All I_0(tau)..I_jmax(tau); shape (jmax+1,) + shape(tau)."""
        self._check(jmax + 1)
        tau = np.asarray(tau, dtype=float)
        p = self.eval_table(jmax + 1, tau)
        out = np.empty_like(p[:-1])
        out[0] = xi(1) * p[1] - xi(0) * p[0]
        for j in range(1, jmax + 1):
            out[j] = xi(j + 1) * p[j + 1] - xi(j) * p[j - 1]
        return out

    def eval(self, j: int, x):
        """P_j(x), vectorized in x."""
        self._check(j)
        x = np.asarray(x, dtype=float)
        val = self.eval_table(j, x)[j]
        return float(val) if val.ndim == 0 else val

    def antiderivative(self, j: int, tau):
        """I_j(tau) = int_0^tau P_j, vectorized in tau."""
        self._check(j + 1)
        tau = np.asarray(tau, dtype=float)
        val = self.antiderivative_table(j, tau)[j]
        return float(val) if val.ndim == 0 else val


_DEFAULT_BASIS = PolynomialBasis()


def eval_legendre(j: int, x):
    """P_j(x) in the default basis (degrees up to 16)."""
    return _DEFAULT_BASIS.eval(j, x)


def eval_antiderivative(j: int, tau):
    """I_j(tau) in the default basis (degrees up to 16)."""
    return _DEFAULT_BASIS.antiderivative(j, tau)
