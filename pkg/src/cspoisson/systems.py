"""Benchmark Poisson systems, reference solutions and system diagnostics.

Each system packages the state-dependent skew structure matrix S(y), the
invariant energy H with its closed-form gradient, and any Casimir functions
(invariants of the structure matrix itself, grad(C)^T S = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "DomainError",
    "PoissonSystem",
    "ReferenceSolution",
    "SystemDiagnostics",
    "euler_rigid_body",
    "lotka_volterra_2d",
    "lotka_volterra_3d",
    "canonical_oscillator",
    "reference_solution_euler",
    "reference_solution_oscillator",
    "rk4_path",
    "rk4_reference",
    "jacobi_elliptic",
    "check_system",
]

# Free rigid body with moments of inertia tied to the elliptic modulus 0.51.
EULER_MODULUS_SQ = 0.51
EULER_ALPHA = 1.0 + 1.0 / math.sqrt(1.51)
EULER_BETA = 1.0 - EULER_MODULUS_SQ / math.sqrt(1.51)


class DomainError(ValueError):
    """State left the domain on which the system is defined."""


@dataclass(frozen=True)
class PoissonSystem:
    """A system dy/dt = S(y) grad H(y) with optional Casimirs and domain."""

    name: str
    dim: int
    structure: Callable[[np.ndarray], np.ndarray]
    hamiltonian: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    initial_state: np.ndarray
    casimirs: tuple[tuple[str, Callable[[np.ndarray], float]], ...] = ()
    domain_guard: Optional[Callable[[np.ndarray], bool]] = None

    def guard(self, y: np.ndarray) -> None:
        """Raise DomainError for states outside the system's domain."""
        if self.domain_guard is not None and not self.domain_guard(y):
            raise DomainError(f"state {y!r} outside the domain of {self.name}")

    def vector_field(self, y: np.ndarray) -> np.ndarray:
        return self.structure(y) @ self.gradient(y)


@dataclass(frozen=True)
class ReferenceSolution:
    """Evaluator t -> y(t) with its guaranteed absolute accuracy."""

    evaluator: Callable[[float], np.ndarray]
    accuracy: float


def euler_rigid_body() -> PoissonSystem:
    """Free rigid body angular momenta; quadratic energy and Casimir."""

    def structure(y):
        y1, y2, y3 = y
        return np.array(
            [
                [0.0, EULER_ALPHA * y3, -EULER_BETA * y2],
                [-EULER_ALPHA * y3, 0.0, y1],
                [EULER_BETA * y2, -y1, 0.0],
            ]
        )

    def hamiltonian(y):
        return 0.5 * float(y @ y)

    def gradient(y):
        return np.array(y, dtype=float)

    def casimir(y):
        return 0.5 * float(y[0] ** 2 + EULER_BETA * y[1] ** 2 + EULER_ALPHA * y[2] ** 2)

    return PoissonSystem(
        name="euler",
        dim=3,
        structure=structure,
        hamiltonian=hamiltonian,
        gradient=gradient,
        initial_state=np.array([0.0, 1.0, 1.0]),
        casimirs=(("quadratic", casimir),),
    )


def _require_positive(y, name):
    if np.any(np.asarray(y) <= 0.0):
        raise DomainError(f"state {y!r} outside the positive domain of {name}")


def lotka_volterra_2d() -> PoissonSystem:
    """Planar predator-prey system in Poisson form; positive quadrant only."""

    def structure(y):
        u, v = y
        return np.array([[0.0, -u * v], [u * v, 0.0]])

    def hamiltonian(y):
        _require_positive(y, "lv2")
        u, v = y
        return math.log(u) - u + 2.0 * math.log(v) - v

    def gradient(y):
        _require_positive(y, "lv2")
        u, v = y
        return np.array([1.0 / u - 1.0, 2.0 / v - 1.0])

    return PoissonSystem(
        name="lv2",
        dim=2,
        structure=structure,
        hamiltonian=hamiltonian,
        gradient=gradient,
        initial_state=np.array([1.0, 1.0]),
        domain_guard=lambda y: bool(np.all(np.asarray(y) > 0.0)),
    )


def lotka_volterra_3d() -> PoissonSystem:
    """Three-species cycle with a logarithmic Casimir; positive octant only."""

    def structure(y):
        y1, y2, y3 = y
        return np.array(
            [
                [0.0, -0.5 * y1 * y2, 0.5 * y1 * y3],
                [0.5 * y1 * y2, 0.0, -y2 * y3],
                [-0.5 * y1 * y3, y2 * y3, 0.0],
            ]
        )

    def hamiltonian(y):
        _require_positive(y, "lv3")
        y1, y2, y3 = y
        return 2.0 * y1 + y2 + 2.0 * y3 + math.log(y2) - 2.0 * math.log(y3)

    def gradient(y):
        _require_positive(y, "lv3")
        y1, y2, y3 = y
        return np.array([2.0, 1.0 + 1.0 / y2, 2.0 - 2.0 / y3])

    def casimir(y):
        _require_positive(y, "lv3")
        y1, y2, y3 = y
        return 2.0 * math.log(y1) + math.log(y2) + math.log(y3)

    return PoissonSystem(
        name="lv3",
        dim=3,
        structure=structure,
        hamiltonian=hamiltonian,
        gradient=gradient,
        initial_state=np.array([1.0, 1.9, 0.5]),
        casimirs=(("log", casimir),),
        domain_guard=lambda y: bool(np.all(np.asarray(y) > 0.0)),
    )


def canonical_oscillator() -> PoissonSystem:
    """Harmonic oscillator with constant canonical structure matrix."""

    J = np.array([[0.0, 1.0], [-1.0, 0.0]])

    def structure(y):
        return J

    def hamiltonian(y):
        return 0.5 * float(y @ y)

    def gradient(y):
        return np.array(y, dtype=float)

    return PoissonSystem(
        name="canonical-oscillator",
        dim=2,
        structure=structure,
        hamiltonian=hamiltonian,
        gradient=gradient,
        initial_state=np.array([1.0, 0.0]),
    )


def jacobi_elliptic(u: float, msq: float) -> tuple[float, float, float]:
    """Jacobi sn, cn, dn at argument u for parameter msq = k^2 in [0, 1).

    Uses the arithmetic-geometric mean with the descending Landen
    transformation; the argument is first reduced modulo the real period.
    """
    if not 0.0 <= msq < 1.0:
        raise ValueError(f"parameter must be in [0, 1), got {msq}")
    if msq == 0.0:
        return math.sin(u), math.cos(u), 1.0
    a, b, c = 1.0, math.sqrt(1.0 - msq), math.sqrt(msq)
    scale = [a]
    excess = [c]
    while abs(c) > 1e-17 * a:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        scale.append(a)
        excess.append(c)
    n = len(scale) - 1
    quarter_period = math.pi / (2.0 * scale[n])
    u = math.fmod(u, 4.0 * quarter_period)
    phi = (2.0**n) * scale[n] * u
    phi_next = phi
    for i in range(n, 0, -1):
        phi_next = phi
        ratio = excess[i] * math.sin(phi) / scale[i]
        phi = 0.5 * (phi + math.asin(max(-1.0, min(1.0, ratio))))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = cn / math.cos(phi_next - phi)
    return sn, cn, dn


def reference_solution_euler() -> ReferenceSolution:
    """Closed-form rigid-body solution through (0, 1, 1) in elliptic functions."""
    amplitude = math.sqrt(1.51)

    def evaluator(t: float) -> np.ndarray:
        sn, cn, dn = jacobi_elliptic(float(t), EULER_MODULUS_SQ)
        return np.array([amplitude * sn, cn, dn])

    return ReferenceSolution(evaluator=evaluator, accuracy=1e-12)


def reference_solution_oscillator() -> ReferenceSolution:
    """Exact rotation solution of the harmonic oscillator from (1, 0)."""

    def evaluator(t: float) -> np.ndarray:
        return np.array([math.cos(t), -math.sin(t)])

    return ReferenceSolution(evaluator=evaluator, accuracy=1e-15)


def rk4_path(system: PoissonSystem, y0, h: float, n_steps: int) -> np.ndarray:
    """Classical fixed-step RK4 trajectory; rows are states at 0, h, ..., n h."""
    y = np.array(y0, dtype=float)
    out = np.empty((n_steps + 1, y.size))
    out[0] = y
    f = system.vector_field
    for k in range(n_steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = y
    return out


def rk4_reference(
    system: PoissonSystem,
    *,
    base_step: float = 1e-4,
    agreement: float = 1e-10,
    max_halvings: int = 6,
) -> ReferenceSolution:
    """Brute-force reference: RK4 with the step halved until answers agree.

    Deliberately independent of the integrators under test; only usable as a
    ground-truth oracle on moderate horizons.
    """

    def solve_to(t: float, h: float) -> np.ndarray:
        n = max(1, math.ceil(t / h))
        return rk4_path(system, system.initial_state, t / n, n)[-1]

    def evaluator(t: float) -> np.ndarray:
        t = float(t)
        if t == 0.0:
            return np.array(system.initial_state, dtype=float)
        if t < 0.0:
            raise ValueError("reference only defined for t >= 0")
        prev = solve_to(t, base_step)
        h = base_step / 2.0
        for _ in range(max_halvings):
            cur = solve_to(t, h)
            if np.max(np.abs(cur - prev)) <= agreement:
                return cur
            prev, h = cur, h / 2.0
        raise RuntimeError(f"step halving failed to settle at t={t}")

    return ReferenceSolution(evaluator=evaluator, accuracy=agreement)


@dataclass(frozen=True)
class SystemDiagnostics:
    """Worst-case residuals of the structural properties over the samples."""

    skew_residual: float
    gradient_residual: float
    casimir_residual: float


def _fd_gradient(func, y, step):
    """Central differences, one coordinate at a time."""
    y = np.asarray(y, dtype=float)
    grad = np.empty_like(y)
    for i in range(y.size):
        e = np.zeros_like(y)
        e[i] = step
        grad[i] = (func(y + e) - func(y - e)) / (2.0 * step)
    return grad


def _fd_gradient_high_order(func, y, step):
    """Five-point fourth-order differences; for the tight Casimir check."""
    y = np.asarray(y, dtype=float)
    grad = np.empty_like(y)
    for i in range(y.size):
        e = np.zeros_like(y)
        e[i] = step
        grad[i] = (
            func(y - 2.0 * e) - 8.0 * func(y - e) + 8.0 * func(y + e) - func(y + 2.0 * e)
        ) / (12.0 * step)
    return grad


def check_system(system: PoissonSystem, samples) -> SystemDiagnostics:
    """Verify skewness, the closed-form gradient and the Casimir identities.

    The gradient is compared against central differences of H at step 1e-6
    (relative to 1 + the gradient's magnitude).  Casimir gradients use a
    fourth-order stencil at step 1e-4, which keeps finite-difference error
    well under the 1e-10 identity tolerance this check is meant to support.
    """
    skew = 0.0
    grad = 0.0
    casimir = 0.0
    for y in samples:
        y = np.asarray(y, dtype=float)
        s = system.structure(y)
        skew = max(skew, float(np.max(np.abs(s + s.T))))
        g = system.gradient(y)
        fd = _fd_gradient(system.hamiltonian, y, 1e-6)
        grad = max(grad, float(np.max(np.abs(fd - g))) / (1.0 + float(np.max(np.abs(g)))))
        for _, c_func in system.casimirs:
            gc = _fd_gradient_high_order(c_func, y, 1e-4)
            casimir = max(casimir, float(np.max(np.abs(gc @ s))))
    return SystemDiagnostics(
        skew_residual=skew, gradient_residual=grad, casimir_residual=casimir
    )
