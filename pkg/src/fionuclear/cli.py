"""Command-line surface for scenario-driven runs.

Every command loads one scenario file, realizes it on its grid, runs the
corresponding pipeline, and writes machine-readable artifacts:

* ``apply``: the operator applied to the scenario input (JSON or CSV);
* ``kernel``: the kernel matrix as CSV (header ``i,j,re,im``);
* ``trace``: the full trace report as JSON;
* ``spectrum``: the sorted eigenvalue list (JSON or CSV);
* ``verify``: decomposition certification record as JSON;
* ``report``: apply + trace + verify in one JSON document, plus SVG
  plots when requested.

``--format`` selects JSON or CSV where both make sense (apply,
spectrum); the kernel matrix is always CSV and the structured reports
are always JSON.  ``--tolerance`` overrides both the truncation budget
and the verification tolerance.

Exit codes: 0 success, 2 validation failure, 3 truncation-budget
failure, 4 eigen-solver failure.  Failures also emit a one-line JSON
error object on standard error.  ``FIO_NUCLEAR_THREADS`` caps the
threads the underlying linear algebra may use.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .backend import active_backend_name
from .errors import (
    FioNuclearError,
    ParameterDomainError,
    ScenarioError,
    SolverError,
    TruncationError,
)
from .grid import Side, sample
from .nuclearity import amplitude_from_kernel, verify_decomposition
from .operator import DEFAULT_TRUNCATION_BUDGET, apply_fio, discretize
from .phase import PhaseFn
from .plots import eigenvalue_scatter, output_magnitude_plot, residual_vs_rank_plot
from .scenario import RealizedScenario, load_scenario
from .serialize import (
    complex_list,
    complex_record,
    write_json,
    write_kernel_csv,
    write_values_csv,
)
from .symbols import Decomposition, SeparableSymbol
from .trace import TraceReport, spectral_trace, trace_report
from .transform import lp_norm

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_TRUNCATION = 3
EXIT_SOLVER = 4

_COMMANDS = ("apply", "kernel", "trace", "spectrum", "verify", "report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fio-nuclear",
        description="Build, apply, and trace-check discretized Fourier integral operators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", required=True, type=Path, help="scenario JSON file")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory (default: .)")
    common.add_argument(
        "--format",
        choices=("json", "csv"),
        default=None,
        help="artifact format for apply and spectrum outputs (default json)",
    )
    common.add_argument("--plots", action="store_true", help="also render SVG plots (report)")
    common.add_argument("--seed", type=int, default=None, help="override the scenario seed (u64)")
    common.add_argument(
        "--grid-N", dest="grid_n", type=int, default=None, help="override the grid size N"
    )
    common.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="override the truncation budget and verification tolerance",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "apply": "apply the operator to the scenario input function",
        "kernel": "write the discretized kernel matrix as CSV",
        "trace": "compute all trace routes and their discrepancies",
        "spectrum": "eigenvalues of the weighted kernel matrix",
        "verify": "certify the scenario decomposition against its symbol",
        "report": "apply + trace + verify in one document, with optional plots",
    }
    for name in _COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


@contextlib.contextmanager
def _thread_cap():
    raw = os.environ.get("FIO_NUCLEAR_THREADS")
    if not raw:
        yield
        return
    try:
        n = int(raw)
    except ValueError:
        raise ParameterDomainError(f"FIO_NUCLEAR_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise ParameterDomainError(f"FIO_NUCLEAR_THREADS must be >= 1, got {n}")
    from threadpoolctl import threadpool_limits

    with threadpool_limits(limits=n):
        yield


def _exit_code_for(exc: FioNuclearError) -> int:
    if isinstance(exc, TruncationError):
        return EXIT_TRUNCATION
    if isinstance(exc, SolverError):
        return EXIT_SOLVER
    return EXIT_VALIDATION


def _emit_error(exc: FioNuclearError, code: int) -> None:
    record = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, TruncationError):
        record["tail_estimate"] = exc.tail_estimate
        record["budget"] = exc.budget
    if isinstance(exc, ScenarioError) and exc.field is not None:
        record["field"] = exc.field
    from .serialize import canonical_json

    sys.stderr.write(canonical_json({"error": record}))


def _envelope(command: str, rs: RealizedScenario) -> dict:
    return {
        "command": command,
        "scenario": rs.name,
        "grid": {"L": rs.grid.half_width, "N": rs.grid.size},
        "backend": active_backend_name(),
        "seed": rs.seed,
    }


def _implied_decomposition(rs: RealizedScenario) -> Decomposition:
    """The scenario's decomposition; pointwise products yield their rank-1 one."""
    if rs.decomposition is not None:
        return rs.decomposition
    e = rs.exponents
    h = sample(rs.symbol.x_factor, Side.SPATIAL, rs.grid)
    g = sample(rs.symbol.xi_factor, Side.FREQUENCY, rs.grid)
    return Decomposition(((h, g),), e.r, e.p1, e.p2, e.regime)


def _construction_phase(rs: RealizedScenario) -> PhaseFn:
    if isinstance(rs.symbol, SeparableSymbol):
        return rs.symbol.phase
    return PhaseFn.zero()


def _apply_payload(out) -> dict:
    return {
        "nodes": [float(x) for x in out.nodes],
        "values": complex_list(out.values),
        "norm_l2": lp_norm(out, 2.0),
    }


def _trace_payload(report: TraceReport) -> dict:
    return {
        "formula_trace": complex_record(report.formula_trace),
        "kernel_trace": complex_record(report.kernel_trace),
        "factored_trace": (
            None if report.factored_trace is None else complex_record(report.factored_trace)
        ),
        "matrix_trace": complex_record(report.matrix_trace),
        "eigen_sum": complex_record(report.eigen_sum),
        "eigenvalues": complex_list(report.eigenvalues),
        "pairwise_discrepancies": {
            key: float(val) for key, val in report.pairwise_discrepancies.items()
        },
        "applicability": {
            "p": report.applicability.p,
            "r": report.applicability.r,
            "spectral_formula_applies": report.applicability.spectral_formula_applies,
        },
    }


def _verify_payload(rs: RealizedScenario, tol: float) -> dict:
    d = _implied_decomposition(rs)
    rec = verify_decomposition(rs.symbol, d, _construction_phase(rs), tol=tol)
    return {
        "max_residual": rec.max_residual,
        "e_r_value": rec.e_r_value,
        "verdict": rec.verdict,
    }


def _run(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None and not (0 <= args.seed < 2**64):
        raise ParameterDomainError(f"--seed must fit in a u64, got {args.seed}")
    rs = scenario.build(size_override=args.grid_n, seed_override=args.seed)
    tol = args.tolerance if args.tolerance is not None else None
    budget = tol if tol is not None else DEFAULT_TRUNCATION_BUDGET
    verify_tol = tol if tol is not None else 1e-8
    fmt = args.format or scenario.outputs.format
    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    name = rs.name
    command = args.command
    written: list[Path] = []

    if command == "apply":
        payload = _apply_payload(apply_fio(rs.phase, rs.symbol, rs.input_function, budget=budget))
        if fmt == "csv":
            rows = [
                (i, payload["nodes"][i], payload["values"][i]["re"], payload["values"][i]["im"])
                for i in range(len(payload["nodes"]))
            ]
            written.append(
                write_values_csv(out_dir / f"{name}_apply.csv", ["i", "x", "re", "im"], rows)
            )
        else:
            written.append(
                write_json(out_dir / f"{name}_apply.json", _envelope(command, rs) | payload)
            )

    elif command == "kernel":
        M = discretize(rs.phase, rs.symbol, rs.grid, budget=budget)
        written.append(write_kernel_csv(out_dir / f"{name}_kernel.csv", M))

    elif command == "trace":
        e = rs.exponents
        report = trace_report(
            rs.phase, rs.symbol, d=rs.decomposition, grid=rs.grid, budget=budget,
            exponents=(e.r, e.p1, e.p2),
        )
        doc = _envelope(command, rs) | {"trace": _trace_payload(report)}
        written.append(write_json(out_dir / f"{name}_trace.json", doc))

    elif command == "spectrum":
        M = discretize(rs.phase, rs.symbol, rs.grid, budget=budget)
        spectral = spectral_trace(M)
        if fmt == "csv":
            rows = [(k, z.real, z.imag) for k, z in enumerate(spectral.eigenvalues)]
            written.append(
                write_values_csv(out_dir / f"{name}_spectrum.csv", ["k", "re", "im"], rows)
            )
        else:
            doc = _envelope(command, rs) | {
                "eigen_sum": complex_record(spectral.eigen_sum),
                "eigenvalues": complex_list(spectral.eigenvalues),
            }
            written.append(write_json(out_dir / f"{name}_spectrum.json", doc))

    elif command == "verify":
        doc = _envelope(command, rs) | {"verification": _verify_payload(rs, verify_tol)}
        written.append(write_json(out_dir / f"{name}_verify.json", doc))

    elif command == "report":
        e = rs.exponents
        report = trace_report(
            rs.phase, rs.symbol, d=rs.decomposition, grid=rs.grid, budget=budget,
            exponents=(e.r, e.p1, e.p2),
        )
        out_f = apply_fio(rs.phase, rs.symbol, rs.input_function, budget=budget)
        verification = _verify_payload(rs, verify_tol)
        plot_paths: list[str] = []
        if args.plots or scenario.outputs.plots:
            plot_dir = out_dir
            if scenario.outputs.plot_dir:
                raw = Path(scenario.outputs.plot_dir)
                plot_dir = raw if raw.is_absolute() else out_dir / raw
            plot_dir.mkdir(parents=True, exist_ok=True)
            M = discretize(rs.phase, rs.symbol, rs.grid, budget=budget)
            sigmas = np.linalg.svd(amplitude_from_kernel(M), compute_uv=False)
            p1 = output_magnitude_plot(out_f, plot_dir / f"{name}_output.svg")
            p2 = eigenvalue_scatter(report.eigenvalues, plot_dir / f"{name}_spectrum.svg")
            p3 = residual_vs_rank_plot(sigmas, plot_dir / f"{name}_residuals.svg")
            plot_paths = [str(p) for p in (p1, p2, p3)]
            written.extend((p1, p2, p3))
        doc = _envelope(command, rs) | {
            "apply": _apply_payload(out_f),
            "trace": _trace_payload(report),
            "verification": verification,
            "plots": plot_paths,
        }
        written.insert(0, write_json(out_dir / f"{name}_report.json", doc))

    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with _thread_cap():
            return _run(args)
    except FioNuclearError as exc:
        code = _exit_code_for(exc)
        _emit_error(exc, code)
        return code
    except KeyboardInterrupt:
        sys.stderr.write('{"error": {"type": "Interrupted", "message": "cancelled", "exit_code": 130}}\n')
        return 130


if __name__ == "__main__":
    sys.exit(main())
