"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 integration failure, 3 a structural
condition check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import (
    METHODS,
    PROBLEMS,
    ExperimentConfig,
    UsageError,
    build_system,
    convergence_study,
    run_experiment,
    run_paper_suite,
    summarize,
    verify_conditions,
    write_convergence_csv,
    write_run_csv,
)
from .integrator import IntegrationError

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_config_file(path: Path) -> dict[str, str]:
    """Flat key=value lines; blank lines and # comments ignored."""
    if not path.exists():
        raise UsageError(f"config file not found: {path}")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_RUN_KEYS = {
    "problem": str,
    "method": str,
    "m": int,
    "quad_sigma": int,
    "quad_varsigma": int,
    "h": float,
    "steps": int,
    "tol": float,
    "out": str,
}


def _merge_run_config(args) -> ExperimentConfig:
    """Precedence: command line over config file over defaults."""
    merged: dict = {}
    if args.config is not None:
        raw = _read_config_file(Path(args.config))
        unknown = set(raw) - set(_RUN_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for key, text in raw.items():
            try:
                merged[key] = _RUN_KEYS[key](text)
            except ValueError:
                raise UsageError(f"bad value for config key {key}: {text!r}") from None
    for key in _RUN_KEYS:
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    if "problem" not in merged:
        raise UsageError("a problem is required (flag --problem or config file)")
    if "out" in merged:
        merged["out"] = Path(merged["out"])
    return ExperimentConfig(**merged)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cspoisson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="integrate one problem and write a CSV")
    run.add_argument("--problem", choices=sorted(PROBLEMS))
    run.add_argument("--method", choices=list(METHODS))
    run.add_argument("--m", type=int)
    run.add_argument("--quad-sigma", type=int, dest="quad_sigma")
    run.add_argument("--quad-varsigma", type=int, dest="quad_varsigma")
    run.add_argument("--h", type=float)
    run.add_argument("--steps", type=int)
    run.add_argument("--tol", type=float)
    run.add_argument("--out", type=Path)
    run.add_argument("--config", type=Path, help="key=value file with the same keys")

    conv = sub.add_parser("converge", help="error vs step size at a fixed horizon")
    conv.add_argument("--problem", required=True, choices=sorted(PROBLEMS))
    conv.add_argument("--method", default="enhanced", choices=list(METHODS))
    conv.add_argument("--m", type=int, default=1)
    conv.add_argument("--h-list", default="0.2,0.1,0.05,0.025", dest="h_list")
    conv.add_argument("--t-end", type=float, default=1.0, dest="t_end")
    conv.add_argument("--quad-sigma", type=int, dest="quad_sigma")
    conv.add_argument("--quad-varsigma", type=int, dest="quad_varsigma")
    conv.add_argument("--out", type=Path)

    ver = sub.add_parser("verify", help="check the structural conditions")
    ver.add_argument("--m-list", default="1,2,3", dest="m_list")

    suite = sub.add_parser("suite", help="run a named experiment batch")
    suite.add_argument("name", choices=["paper"])
    suite.add_argument("--full", action="store_true", help="full-length drift runs")
    suite.add_argument("--out-dir", type=Path, default=Path("results"), dest="out_dir")
    suite.add_argument("--steps", type=int, help="override the step count of every run")

    return parser


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated numbers, got {text!r}") from None


def _cmd_run(args) -> int:
    config = _merge_run_config(args).validated()
    record = run_experiment(config)
    if config.out is not None:
        write_run_csv(config.out, build_system(config.problem), record)
        print(f"wrote {config.out}")
    print(summarize(config, record))
    return 0


def _cmd_converge(args) -> int:
    h_values = _parse_float_list(args.h_list, "--h-list")
    if not h_values:
        raise UsageError("--h-list must contain at least one step size")
    rows = convergence_study(
        args.problem,
        args.method,
        args.m,
        h_values,
        args.t_end,
        quad_sigma=args.quad_sigma,
        quad_varsigma=args.quad_varsigma,
    )
    print("h,global_err,observed_order")
    for row in rows:
        order = "" if row.observed_order is None else f"{row.observed_order:.3f}"
        print(f"{row.h:g},{row.global_error:.6e},{order}")
    if args.out is not None:
        write_convergence_csv(args.out, rows)
        print(f"wrote {args.out}")
    return 0


def _cmd_verify(args) -> int:
    m_values = _parse_int_list(args.m_list, "--m-list")
    if not m_values:
        raise UsageError("--m-list must contain at least one order")
    reports = verify_conditions(m_values)
    failed = False
    for report in reports:
        status = "ok" if report.ok else "FAIL"
        failed = failed or not report.ok
        nodes = "  ".join(
            f"casimir_nodes(s={s})={v:.2e}" for s, v in report.casimir_node_residuals.items()
        )
        print(
            f"m={report.m}: {status}  energy={report.energy_residual:.2e}  "
            f"symmetry={report.symmetry_residual:.2e}  "
            f"assumptions={report.assumptions} (expected {report.expected_assumptions})  "
            f"{nodes}  negative_control={report.negative_control_residual:.2e} "
            f"(expected violation)"
        )
    return 3 if failed else 0


def _cmd_suite(args) -> int:
    written = run_paper_suite(args.out_dir, full=args.full, steps_override=args.steps)
    print(f"wrote {len(written)} files to {args.out_dir}")
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "converge":
            return _cmd_converge(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "suite":
            return _cmd_suite(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except IntegrationError as err:
        print(f"integration failed: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
