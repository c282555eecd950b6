"""Energy-preserving time steppers for Poisson systems.

The enhanced continuous-stage step advances y through a stage polynomial

    Y(tau) = y0 + h * sum_i I_i(tau) w_i,        i = 0..m-1,

whose coefficients w_i solve the fixed-point system obtained by inserting the
order-2m coefficient family and discretizing the two stage integrals with
quadrature rules (sigma for the gradient factor, varsigma for the structure
factor).  The update is y1 = y0 + h w_0.  The comparison method is the
order-2 mean-gradient step y1 = y0 + h S((y0+y1)/2) int_0^1 grad H on the
chord, solved by the same fixed-point iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .legendre import PolynomialBasis
from .quadrature import QuadratureRule
from .systems import DomainError, PoissonSystem, ReferenceSolution

__all__ = [
    "MethodSpec",
    "StageSolution",
    "RunRecord",
    "ConvergenceError",
    "IntegrationError",
    "step_enhanced_cs",
    "step_cohen_hairer",
    "step_explicit_euler",
    "integrate",
    "adjoint_roundtrip",
]

STALL_LIMIT = 25
DIVERGENCE_BOUND = 1e100


class ConvergenceError(RuntimeError):
    """Fixed-point iteration failed to reach the requested tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class _IterationMonitor:
    """Stall and divergence bookkeeping shared by the fixed-point loops."""

    def __init__(self, tol: float):
        self.tol = tol
        self.best = np.inf
        self.stall = 0

    def converged(self, residual: float, iteration: int) -> bool:
        if residual <= self.tol:
            return True
        if not np.isfinite(residual) or residual > DIVERGENCE_BOUND:
            raise ConvergenceError(
                f"iteration diverged (residual {residual:.3e} after {iteration} iterations)",
                residual,
                iteration,
            )
        if residual >= self.best:
            self.stall += 1
            if self.stall >= STALL_LIMIT:
                raise ConvergenceError(
                    f"residual stalled at {residual:.3e} for {STALL_LIMIT} iterations "
                    f"(tol {self.tol:.3e})",
                    residual,
                    iteration,
                )
        else:
            self.best = residual
            self.stall = 0
        return False


class IntegrationError(RuntimeError):
    """A step failed; records which one and at what time."""

    def __init__(self, message: str, step_index: int, time: float):
        super().__init__(message)
        self.step_index = step_index
        self.time = time


@dataclass(frozen=True)
class MethodSpec:
    """Order parameter m plus the two stage-integral quadrature rules.

    The sigma rule needs at least m nodes: with fewer, the discretized
    gradient integral can no longer be exact on the stage polynomial's
    degree and the energy-conservation mechanism breaks.
    """

    m: int
    sigma_rule: QuadratureRule
    varsigma_rule: QuadratureRule
    solver_tol: float = 1e-14
    max_iters: int = 200

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if len(self.sigma_rule) < self.m:
            raise ValueError(
                f"sigma rule has {len(self.sigma_rule)} nodes, needs >= m = {self.m}"
            )
        if self.solver_tol <= 0.0:
            raise ValueError("solver_tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True)
class StageSolution:
    """Converged stage coefficients w_i (rows) with iteration statistics."""

    coefficients: np.ndarray
    iterations: int
    converged: bool


@dataclass
class RunRecord:
    """Per-step trajectory and invariant-drift data for one integration."""

    times: np.ndarray
    states: np.ndarray
    energy_error: np.ndarray
    casimir_errors: dict[str, np.ndarray]
    solver_stats: np.ndarray
    global_error: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        n = self.times.shape[0]
        lengths = [self.states.shape[0], self.energy_error.shape[0], self.solver_stats.shape[0]]
        lengths += [v.shape[0] for v in self.casimir_errors.values()]
        if self.global_error is not None:
            lengths.append(self.global_error.shape[0])
        if any(length != n for length in lengths):
            raise ValueError("record arrays must all have one row per step")


class _EnhancedStepper:
    """Precomputed node tables and the fixed-point loop for one method."""

    def __init__(self, system: PoissonSystem, spec: MethodSpec):
        self.system = system
        self.spec = spec
        basis = PolynomialBasis(max(16, spec.m + 1))
        c = spec.varsigma_rule.nodes
        d = spec.sigma_rule.nodes
        m = spec.m
        self.p_at_c = basis.eval_table(m - 1, c)  # (m, s_varsigma)
        self.i_at_c = basis.antiderivative_table(m - 1, c)
        self.p_at_d = basis.eval_table(m - 1, d)  # (m, s_sigma)
        self.i_at_d = basis.antiderivative_table(m - 1, d)
        self.wp_c = spec.varsigma_rule.weights * self.p_at_c  # weighted projections
        self.wp_d = spec.sigma_rule.weights * self.p_at_d

    def initial_guess(self, y0: np.ndarray) -> np.ndarray:
        w = np.zeros((self.spec.m, y0.size))
        w[0] = self.system.vector_field(y0)
        return w

    def step(self, y0: np.ndarray, h: float, w_start: Optional[np.ndarray] = None):
        sys_, spec = self.system, self.spec
        y0 = np.asarray(y0, dtype=float)
        w = self.initial_guess(y0) if w_start is None else np.array(w_start, dtype=float)
        monitor = _IterationMonitor(spec.solver_tol * (1.0 + float(np.max(np.abs(y0)))))
        for iteration in range(1, spec.max_iters + 1):
            stages_c = y0 + h * (self.i_at_c.T @ w)  # states at varsigma nodes
            stages_d = y0 + h * (self.i_at_d.T @ w)
            for row in stages_c:
                sys_.guard(row)
            for row in stages_d:
                sys_.guard(row)
            grads = np.stack([sys_.gradient(row) for row in stages_d])
            proj = self.wp_d @ grads  # (m, n) Legendre modes of the gradient
            mixed = self.p_at_c.T @ proj  # gradient factor seen at each varsigma node
            pushed = np.stack(
                [sys_.structure(row) @ vec for row, vec in zip(stages_c, mixed)]
            )
            w_new = self.wp_c @ pushed
            residual = float(np.max(np.abs(w_new - w)))
            w = w_new
            if monitor.converged(residual, iteration):
                return y0 + h * w[0], StageSolution(w, iteration, True)
        raise ConvergenceError(
            f"no convergence in {spec.max_iters} iterations "
            f"(residual {residual:.3e}, tol {monitor.tol:.3e})",
            residual,
            spec.max_iters,
        )


def step_enhanced_cs(
    system: PoissonSystem,
    spec: MethodSpec,
    y0,
    h: float,
    w_start: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, StageSolution]:
    """One step of the order-2m continuous-stage method."""
    return _EnhancedStepper(system, spec).step(np.asarray(y0, dtype=float), h, w_start)


def step_cohen_hairer(
    system: PoissonSystem,
    spec: MethodSpec,
    y0,
    h: float,
) -> tuple[np.ndarray, StageSolution]:
    """One step of the order-2 mean-gradient comparison method.

    The chord-averaged gradient uses the spec's sigma rule; the structure
    matrix is frozen at the midpoint of the step chord.
    """
    sys_ = system
    y0 = np.asarray(y0, dtype=float)
    d = spec.sigma_rule.nodes
    b = spec.sigma_rule.weights
    y1 = y0 + h * sys_.vector_field(y0)
    monitor = _IterationMonitor(spec.solver_tol * (1.0 + float(np.max(np.abs(y0)))))
    for iteration in range(1, spec.max_iters + 1):
        mid = 0.5 * (y0 + y1)
        sys_.guard(mid)
        chord = y0 + np.outer(d, y1 - y0)
        for row in chord:
            sys_.guard(row)
        mean_grad = b @ np.stack([sys_.gradient(row) for row in chord])
        y1_new = y0 + h * (sys_.structure(mid) @ mean_grad)
        residual = float(np.max(np.abs(y1_new - y1)))
        y1 = y1_new
        if monitor.converged(residual, iteration):
            update = (y1 - y0) / h if h != 0.0 else np.zeros_like(y0)
            return y1, StageSolution(update[None, :], iteration, True)
    raise ConvergenceError(
        f"no convergence in {spec.max_iters} iterations "
        f"(residual {residual:.3e}, tol {monitor.tol:.3e})",
        residual,
        spec.max_iters,
    )


def step_explicit_euler(system: PoissonSystem, y0, h: float) -> np.ndarray:
    """Plain explicit Euler step; a deliberately non-symmetric control."""
    y0 = np.asarray(y0, dtype=float)
    return y0 + h * system.vector_field(y0)


_METHOD_ALIASES = {
    "enhanced": "enhanced",
    "cohen-hairer": "cohen-hairer",
    "baseline": "cohen-hairer",
}


def integrate(
    system: PoissonSystem,
    method: str,
    spec: MethodSpec,
    h: float,
    n_steps: int,
    y0=None,
    reference: Optional[ReferenceSolution] = None,
) -> RunRecord:
    """Run n_steps of the chosen method, recording invariant drift per step.

    Stage iterations are warm-started from the previous step's coefficients.
    Step failures surface as IntegrationError carrying the failing index.
    """
    if method not in _METHOD_ALIASES:
        raise ValueError(f"unknown method {method!r}")
    method = _METHOD_ALIASES[method]
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    y = np.array(system.initial_state if y0 is None else y0, dtype=float)

    times = np.arange(n_steps + 1) * h
    states = np.empty((n_steps + 1, y.size))
    iters = np.zeros(n_steps + 1, dtype=int)
    states[0] = y

    stepper = _EnhancedStepper(system, spec) if method == "enhanced" else None
    w_prev = None
    for k in range(n_steps):
        try:
            if stepper is not None:
                y, stage = stepper.step(y, h, w_prev)
                w_prev = stage.coefficients
            else:
                y, stage = step_cohen_hairer(system, spec, y, h)
        except (ConvergenceError, DomainError) as err:
            raise IntegrationError(
                f"step {k + 1} failed at t={times[k]:.6g}: {err}", k + 1, float(times[k])
            ) from err
        states[k + 1] = y
        iters[k + 1] = stage.iterations

    h0 = system.hamiltonian(states[0])
    energy = np.array([system.hamiltonian(row) - h0 for row in states])
    casimirs = {}
    for name, func in system.casimirs:
        c0 = func(states[0])
        casimirs[name] = np.array([func(row) - c0 for row in states])
    global_error = None
    if reference is not None:
        global_error = np.array(
            [np.max(np.abs(states[k] - reference.evaluator(times[k]))) for k in range(n_steps + 1)]
        )
    return RunRecord(
        times=times,
        states=states,
        energy_error=energy,
        casimir_errors=casimirs,
        solver_stats=iters,
        global_error=global_error,
    )


def adjoint_roundtrip(system: PoissonSystem, spec: MethodSpec, y0, h: float) -> float:
    """Forward step then backward step; max-norm defect from the start state.

    A method equal to its adjoint returns exactly (up to solver tolerance).
    """
    stepper = _EnhancedStepper(system, spec)
    y1, _ = stepper.step(np.asarray(y0, dtype=float), h)
    y2, _ = stepper.step(y1, -h)
    return float(np.max(np.abs(y2 - np.asarray(y0, dtype=float))))
