"""Experiment harness: named problems, CSV output, convergence and verify runs.

Everything here is deterministic; running the same config twice produces
byte-identical CSV files.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .integrator import MethodSpec, RunRecord, integrate
from .quadrature import gauss_rule, interpolatory_weights
from .systems import (
    PoissonSystem,
    ReferenceSolution,
    canonical_oscillator,
    euler_rigid_body,
    lotka_volterra_2d,
    lotka_volterra_3d,
    reference_solution_euler,
    reference_solution_oscillator,
    rk4_reference,
)
from .tableau import (
    check_casimir_node_identity,
    check_energy_condition,
    check_simplifying_assumptions,
    check_symmetry_condition,
)

__all__ = [
    "UsageError",
    "ExperimentConfig",
    "ExperimentSummary",
    "build_system",
    "build_reference",
    "default_quadrature_points",
    "run_experiment",
    "write_run_csv",
    "summarize",
    "convergence_study",
    "write_convergence_csv",
    "verify_conditions",
    "run_paper_suite",
    "PROBLEMS",
    "METHODS",
]


class UsageError(ValueError):
    """Bad command-line or config input; maps to exit code 1."""


PROBLEMS = {
    "euler": euler_rigid_body,
    "lv2": lotka_volterra_2d,
    "lv3": lotka_volterra_3d,
    "canonical-oscillator": canonical_oscillator,
}

METHODS = ("enhanced", "cohen-hairer")

# Gauss point counts matching each problem's gradient nonlinearity.
_DEFAULT_POINTS = {
    "euler": 2,
    "lv2": 4,
    "lv3": 6,
    "canonical-oscillator": 2,
}

_ANALYTIC_REFERENCES = {
    "euler": reference_solution_euler,
    "canonical-oscillator": reference_solution_oscillator,
}


def default_quadrature_points(problem: str) -> int:
    return _DEFAULT_POINTS[problem]


@dataclass(frozen=True)
class ExperimentConfig:
    """One integration run: problem, method, order, rules, step and length."""

    problem: str
    method: str = "enhanced"
    m: int = 1
    quad_sigma: Optional[int] = None
    quad_varsigma: Optional[int] = None
    h: float = 0.1
    steps: int = 100
    tol: float = 1e-14
    out: Optional[Path] = None

    def validated(self) -> "ExperimentConfig":
        if self.problem not in PROBLEMS:
            raise UsageError(
                f"unknown problem {self.problem!r}; choose from {sorted(PROBLEMS)}"
            )
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}; choose from {list(METHODS)}")
        if self.m < 1:
            raise UsageError(f"m must be >= 1, got {self.m}")
        if not math.isfinite(self.h) or self.h == 0.0:
            raise UsageError(f"h must be a nonzero finite number, got {self.h}")
        if self.steps < 1:
            raise UsageError(f"steps must be >= 1, got {self.steps}")
        if self.tol <= 0.0:
            raise UsageError(f"tol must be positive, got {self.tol}")
        points = default_quadrature_points(self.problem)
        sigma = self.quad_sigma if self.quad_sigma is not None else max(points, self.m)
        varsigma = self.quad_varsigma if self.quad_varsigma is not None else points
        if sigma < self.m:
            raise UsageError(f"quad-sigma needs >= m = {self.m} points, got {sigma}")
        if varsigma < 1:
            raise UsageError(f"quad-varsigma needs >= 1 point, got {varsigma}")
        return replace(self, quad_sigma=sigma, quad_varsigma=varsigma)


def build_system(problem: str) -> PoissonSystem:
    try:
        return PROBLEMS[problem]()
    except KeyError:
        raise UsageError(f"unknown problem {problem!r}") from None


def build_reference(problem: str, brute_force: bool = False) -> ReferenceSolution:
    """Analytic reference when one exists, otherwise the RK4 oracle."""
    maker = _ANALYTIC_REFERENCES.get(problem)
    if maker is not None and not brute_force:
        return maker()
    return rk4_reference(build_system(problem))


def run_experiment(
    config: ExperimentConfig, reference: Optional[ReferenceSolution] = None
) -> RunRecord:
    """Integrate per config; attaches the analytic reference when available."""
    config = config.validated()
    system = build_system(config.problem)
    if reference is None:
        maker = _ANALYTIC_REFERENCES.get(config.problem)
        reference = maker() if maker is not None else None
    spec = MethodSpec(
        m=config.m,
        sigma_rule=gauss_rule(config.quad_sigma),
        varsigma_rule=gauss_rule(config.quad_varsigma),
        solver_tol=config.tol,
    )
    return integrate(
        system,
        config.method,
        spec,
        h=config.h,
        n_steps=config.steps,
        reference=reference,
    )


def _fmt(value: float) -> str:
    return format(value, ".17g")


def write_run_csv(path, system: PoissonSystem, record: RunRecord) -> None:
    """One row per step: state, invariant drifts, global error, iterations.

    The global_err column is always present; its cells are empty when the
    run has no reference solution.
    """
    path = Path(path)
    columns = ["t"]
    columns += [f"y{i + 1}" for i in range(record.states.shape[1])]
    columns.append("energy_err")
    columns += [f"casimir_{name}_err" for name in record.casimir_errors]
    columns += ["global_err", "iters"]
    lines = [",".join(columns)]
    casimir_series = list(record.casimir_errors.values())
    for k in range(record.times.shape[0]):
        cells = [_fmt(record.times[k])]
        cells += [_fmt(v) for v in record.states[k]]
        cells.append(_fmt(record.energy_error[k]))
        cells += [_fmt(series[k]) for series in casimir_series]
        cells.append("" if record.global_error is None else _fmt(record.global_error[k]))
        cells.append(str(int(record.solver_stats[k])))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


@dataclass(frozen=True)
class ExperimentSummary:
    """Headline numbers for one run."""

    problem: str
    method: str
    m: int
    steps: int
    h: float
    max_energy_error: float
    max_casimir_errors: dict[str, float]
    final_global_error: Optional[float]
    mean_iterations: float

    def __str__(self) -> str:
        parts = [
            f"problem={self.problem}",
            f"method={self.method}",
            f"m={self.m}",
            f"h={self.h:g}",
            f"steps={self.steps}",
            f"max|dH|={self.max_energy_error:.3e}",
        ]
        for name, value in self.max_casimir_errors.items():
            parts.append(f"max|dC_{name}|={value:.3e}")
        if self.final_global_error is not None:
            parts.append(f"final_global_err={self.final_global_error:.3e}")
        parts.append(f"mean_iters={self.mean_iterations:.1f}")
        return "  ".join(parts)


def summarize(config: ExperimentConfig, record: RunRecord) -> ExperimentSummary:
    return ExperimentSummary(
        problem=config.problem,
        method=config.method,
        m=config.m,
        steps=record.times.shape[0] - 1,
        h=config.h,
        max_energy_error=float(np.max(np.abs(record.energy_error))),
        max_casimir_errors={
            name: float(np.max(np.abs(series)))
            for name, series in record.casimir_errors.items()
        },
        final_global_error=(
            None if record.global_error is None else float(record.global_error[-1])
        ),
        mean_iterations=float(np.mean(record.solver_stats[1:])),
    )


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    global_error: float
    observed_order: Optional[float]


def convergence_study(
    problem: str,
    method: str,
    m: int,
    h_values,
    t_end: float,
    *,
    quad_sigma: Optional[int] = None,
    quad_varsigma: Optional[int] = None,
    tol: float = 1e-14,
    reference: Optional[ReferenceSolution] = None,
) -> list[ConvergenceRow]:
    """Error at t_end for each h, with observed order log2(e(2h)/e(h)).

    Each h must divide t_end into a whole number of steps.
    """
    if reference is None:
        reference = build_reference(problem)
    rows: list[ConvergenceRow] = []
    previous: Optional[ConvergenceRow] = None
    target = np.asarray(reference.evaluator(t_end), dtype=float)
    for h in h_values:
        n_steps = round(t_end / h)
        if n_steps < 1 or abs(n_steps * h - t_end) > 1e-12 * max(1.0, abs(t_end)):
            raise UsageError(f"step size {h} does not divide horizon {t_end}")
        config = ExperimentConfig(
            problem=problem,
            method=method,
            m=m,
            quad_sigma=quad_sigma,
            quad_varsigma=quad_varsigma,
            h=h,
            steps=n_steps,
            tol=tol,
        )
        record = run_experiment(config, reference=reference)
        error = float(np.max(np.abs(record.states[-1] - target)))
        order = None
        if previous is not None and error > 0.0 and previous.global_error > 0.0:
            ratio = previous.h / h
            order = math.log(previous.global_error / error) / math.log(ratio)
        row = ConvergenceRow(h=h, global_error=error, observed_order=order)
        rows.append(row)
        previous = row
    return rows


def write_convergence_csv(path, rows: list[ConvergenceRow]) -> None:
    lines = ["h,global_err,observed_order"]
    for row in rows:
        order = "" if row.observed_order is None else _fmt(row.observed_order)
        lines.append(f"{_fmt(row.h)},{_fmt(row.global_error)},{order}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


@dataclass(frozen=True)
class ConditionReport:
    """Checker results for one m, with the negative control included."""

    m: int
    energy_residual: float
    symmetry_residual: float
    assumptions: tuple[int, int, int]
    expected_assumptions: tuple[int, int, int]
    casimir_node_residuals: dict[int, float]
    negative_control_residual: float

    @property
    def ok(self) -> bool:
        casimirs_ok = all(v <= 1e-11 for v in self.casimir_node_residuals.values())
        return (
            self.energy_residual <= 1e-11
            and self.symmetry_residual <= 1e-11
            and self.assumptions == self.expected_assumptions
            and casimirs_ok
            and self.negative_control_residual > 1e-3
        )


def verify_conditions(m_values) -> list[ConditionReport]:
    """Run every structural check for each m.

    The negative control feeds a non-Gauss node pair through the Casimir
    node identity and must see a violation; everything else must pass.
    """
    reports = []
    for m in m_values:
        if m < 1:
            raise UsageError(f"m must be >= 1, got {m}")
        node_checks = {}
        for s in (m - 1, m):
            if s >= 1:
                node_checks[s] = check_casimir_node_identity(m, gauss_rule(s))
        control = check_casimir_node_identity(
            2, interpolatory_weights(np.array([0.1, 0.3]))
        )
        reports.append(
            ConditionReport(
                m=m,
                energy_residual=check_energy_condition(m),
                symmetry_residual=check_symmetry_condition(m),
                assumptions=check_simplifying_assumptions(m).as_tuple(),
                expected_assumptions=(2 * m, m, m - 1),
                casimir_node_residuals=node_checks,
                negative_control_residual=control,
            )
        )
    return reports


_SUITE_RUNS = (
    ("euler", 1, 0.1, 10_000),
    ("euler", 2, 0.1, 10_000),
    ("lv2", 1, 0.01, 100_000),
    ("lv2", 2, 0.01, 100_000),
    ("lv3", 1, 0.01, 100_000),
    ("lv3", 2, 0.01, 100_000),
)

_SUITE_CONVERGENCE_H = (0.2, 0.1, 0.05, 0.025)


def run_paper_suite(
    out_dir, *, full: bool = False, steps_override: Optional[int] = None, log=print
) -> list[Path]:
    """Reproduce the benchmark drift runs and convergence tables as CSV files.

    Long runs default to a tenth of their published length; pass full=True
    to restore the 1e5-step versions.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for problem, m, h, steps in _SUITE_RUNS:
        if steps_override is not None:
            steps = steps_override
        elif not full and steps > 10_000:
            steps = 10_000
        config = ExperimentConfig(problem=problem, m=m, h=h, steps=steps).validated()
        started = time.perf_counter()
        record = run_experiment(config)
        path = out_dir / f"{problem}_m{m}.csv"
        write_run_csv(path, build_system(problem), record)
        written.append(path)
        log(f"{summarize(config, record)}  [{time.perf_counter() - started:.1f}s]")
    for m in (1, 2):
        rows = convergence_study("euler", "enhanced", m, _SUITE_CONVERGENCE_H, 1.0)
        path = out_dir / f"convergence_euler_m{m}.csv"
        write_convergence_csv(path, rows)
        written.append(path)
        orders = ["-" if r.observed_order is None else f"{r.observed_order:.2f}" for r in rows]
        log(f"convergence euler m={m}: observed orders {', '.join(orders)}")
    return written
