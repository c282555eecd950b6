"""Coefficient families for continuous-stage methods and their condition checks.

A family of order 2m is built from the first m shifted orthonormal Legendre
polynomials.  With I_i the antiderivative of P_i,

    b(vs, sg)        = sum_j P_j(vs) P_j(sg)
    a(tau, vs, sg)   = sum_{i,j} P_i(vs) P_j(vs) I_i(tau) P_j(sg)
    a_tilde(tau, vs) = sum_i P_i(vs) I_i(tau)

so that a factorizes as a_tilde * b.  The checkers accept either an order
parameter m or any object with broadcasting-callable attributes of the same
names, which lets tests feed deliberately broken families through them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .legendre import PolynomialBasis
from .quadrature import gauss_rule

__all__ = [
    "MethodCoefficients",
    "coeff_a",
    "coeff_b",
    "coeff_a_tilde",
    "check_energy_condition",
    "check_symmetry_condition",
    "check_casimir_node_identity",
    "check_simplifying_assumptions",
    "SimplifyingAssumptions",
    "uniform_grid",
]

DEFAULT_GRID_POINTS = 11


def uniform_grid(n: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """n uniformly spaced sample points on [0, 1], endpoints included."""
    if n < 2:
        raise ValueError(f"grid needs at least 2 points, got {n}")
    return np.linspace(0.0, 1.0, n)


def _as_scalar(value):
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class MethodCoefficients:
    """Legendre coefficient family for the method of order 2m."""

    m: int
    basis: PolynomialBasis | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if self.basis is None:
            object.__setattr__(self, "basis", PolynomialBasis(max(16, self.m + 1)))

    def _tables(self, *points):
        broadcast = np.broadcast_arrays(*(np.asarray(p, dtype=float) for p in points))
        return broadcast

    def b(self, vs, sg):
        """Update-weight kernel b(vs, sg)."""
        vs, sg = self._tables(vs, sg)
        pv = self.basis.eval_table(self.m - 1, vs)
        ps = self.basis.eval_table(self.m - 1, sg)
        return _as_scalar(np.einsum("j...,j...->...", pv, ps))

    def a(self, tau, vs, sg):
        """Stage kernel a(tau, vs, sg), the double Legendre expansion."""
        tau, vs, sg = self._tables(tau, vs, sg)
        it = self.basis.antiderivative_table(self.m - 1, tau)
        pv = self.basis.eval_table(self.m - 1, vs)
        ps = self.basis.eval_table(self.m - 1, sg)
        return _as_scalar(np.einsum("i...,i...,j...,j...->...", it, pv, pv, ps))

    def a_tilde(self, tau, vs):
        """Reduced stage kernel a_tilde(tau, vs); a = a_tilde * b."""
        tau, vs = self._tables(tau, vs)
        it = self.basis.antiderivative_table(self.m - 1, tau)
        pv = self.basis.eval_table(self.m - 1, vs)
        return _as_scalar(np.einsum("i...,i...->...", it, pv))

    def a_dtau(self, tau, vs, sg):
        """Derivative of a in its first argument, in closed form."""
        tau, vs, sg = self._tables(tau, vs, sg)
        pt = self.basis.eval_table(self.m - 1, tau)
        pv = self.basis.eval_table(self.m - 1, vs)
        ps = self.basis.eval_table(self.m - 1, sg)
        return _as_scalar(np.einsum("i...,i...,j...,j...->...", pt, pv, pv, ps))

    def c(self, tau, rule=None):
        """Consistency weight c(tau) = double integral of a over (vs, sg)."""
        rule = rule or gauss_rule(self.m + 1)
        x, w = rule.nodes, rule.weights
        vals = self.a(
            np.asarray(tau, dtype=float)[..., None, None], x[:, None], x[None, :]
        )
        return _as_scalar(np.einsum("...ij,i,j->...", np.asarray(vals), w, w))


def _family(family_or_m):
    if isinstance(family_or_m, (int, np.integer)):
        return MethodCoefficients(int(family_or_m))
    return family_or_m


def coeff_b(m: int, vs, sg):
    """b(vs, sg) for the order-2m family."""
    return MethodCoefficients(m).b(vs, sg)


def coeff_a(m: int, tau, vs, sg):
    """a(tau, vs, sg) for the order-2m family."""
    return MethodCoefficients(m).a(tau, vs, sg)


def coeff_a_tilde(m: int, tau, vs):
    """a_tilde(tau, vs) for the order-2m family."""
    return MethodCoefficients(m).a_tilde(tau, vs)


def check_energy_condition(family_or_m, grid=None) -> float:
    """Residual of the exact-energy conditions on a sample grid.

    Sums the worst violations of a(0, vs, sg) = 0, a(1, vs, sg) = b(vs, sg)
    and d/dtau a(tau, vs, sg) = d/dsg a(sg, vs, tau) over the grid cube.
    """
    fam = _family(family_or_m)
    g = uniform_grid() if grid is None else np.asarray(grid, dtype=float)
    t, v, s = np.meshgrid(g, g, g, indexing="ij")
    plane_v, plane_s = np.meshgrid(g, g, indexing="ij")
    res_start = np.max(np.abs(fam.a(0.0, plane_v, plane_s)))
    res_end = np.max(np.abs(fam.a(1.0, plane_v, plane_s) - fam.b(plane_v, plane_s)))
    res_deriv = np.max(np.abs(fam.a_dtau(t, v, s) - fam.a_dtau(s, v, t)))
    return float(res_start + res_end + res_deriv)


def check_symmetry_condition(family_or_m, grid=None) -> float:
    """Max violation of a(tau, vs, sg) + a(1-tau, 1-vs, 1-sg) = b(vs, sg)."""
    fam = _family(family_or_m)
    g = uniform_grid() if grid is None else np.asarray(grid, dtype=float)
    t, v, s = np.meshgrid(g, g, g, indexing="ij")
    residual = fam.a(t, v, s) + fam.a(1.0 - t, 1.0 - v, 1.0 - s) - fam.b(v, s)
    return float(np.max(np.abs(residual)))


def check_casimir_node_identity(family_or_m, rule) -> float:
    """Max violation of a_tilde(ci, cj) + a_tilde(cj, ci) = 1 over node pairs.

    This is what quadratic-Casimir conservation of the discretized method
    needs from the stage-integral rule; it holds for Gauss rules with m-1 or
    m nodes and fails for generic node sets.
    """
    fam = _family(family_or_m)
    c = np.asarray(rule.nodes, dtype=float)
    ci, cj = np.meshgrid(c, c, indexing="ij")
    residual = fam.a_tilde(ci, cj) + fam.a_tilde(cj, ci) - 1.0
    return float(np.max(np.abs(residual)))


@dataclass(frozen=True)
class SimplifyingAssumptions:
    """Highest orders to which the three simplifying assumptions hold."""

    xi_b: int
    eta_c: int
    zeta_d: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.xi_b, self.eta_c, self.zeta_d)


def check_simplifying_assumptions(
    m: int, *, tol: float = 1e-11, n_samples: int = DEFAULT_GRID_POINTS
) -> SimplifyingAssumptions:
    """Walk the quadrature-order conditions and report where each first fails.

    The b-condition integrates b against monomials; the a-conditions are
    checked at sampled tau (respectively sampled (vs, sg)) points.  Integrals
    use a Gauss rule with 2m+2 nodes, exact well past every polynomial degree
    reached before the expected failure orders (2m, m, m-1).
    """
    fam = MethodCoefficients(m)
    rule = gauss_rule(2 * m + 2)
    x, w = rule.nodes, rule.weights
    taus = uniform_grid(n_samples)
    grid_v, grid_s = np.meshgrid(taus, taus, indexing="ij")
    cap = 2 * m + 4

    b_nodes = fam.b(x[:, None], x[None, :])
    a_tau_nodes = fam.a(taus[:, None, None], x[None, :, None], x[None, None, :])
    a_from_nodes = fam.a(x[:, None, None], grid_v[None], grid_s[None])
    b_grid = fam.b(grid_v, grid_s)

    def b_holds(k: int, l: int) -> bool:
        lhs = np.einsum("i,j,ij,j,i->", w, w, b_nodes, x ** (k - 1), x**l)
        return abs(lhs - 1.0 / (k + l)) <= tol

    def c_holds(k: int, l: int) -> bool:
        lhs = np.einsum("i,j,tij,j,i->t", w, w, a_tau_nodes, x ** (k - 1), x**l)
        return bool(np.max(np.abs(lhs - taus ** (k + l) / (k + l))) <= tol)

    def d_holds(k: int, l: int) -> bool:
        p = k + l
        inner = w @ b_nodes  # integral of b over its first slot, per tau node
        lhs = np.einsum("j,jab->ab", w * inner * x ** (p - 1), a_from_nodes)
        rhs = b_grid * (1.0 - grid_v**p) / p
        return bool(np.max(np.abs(lhs - rhs)) <= tol)

    def highest(holds) -> int:
        for q in range(1, cap + 1):
            if not all(holds(k, q - k) for k in range(1, q + 1)):
                return q - 1
        return cap

    return SimplifyingAssumptions(
        xi_b=highest(b_holds), eta_c=highest(c_holds), zeta_d=highest(d_holds)
    )
