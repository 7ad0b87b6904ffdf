"""Command-line surface.

Subcommands: analyze, simulate, sweep, validity, convergence.  Numeric
output always goes to stdout; diagnostics and figure notices go to stderr.
Exit codes: 0 success, 1 computation or domain error, 2 usage or parse
error.  Runs are reproducible: all randomness flows from --seed (default
42), and repeated invocations with the same arguments print identical
bytes, regardless of --workers or --chunk-size.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import DomainError, Estimate, relative_error_of, total_value
from .io import ScenarioFormatError, emit, emit_simulation, load_scenario
from .propagation import (
    aggregate_error_quadrature,
    aggregate_error_sum,
    scenario_error_report,
    taylor_validity_table,
)
from .simulation import (
    DEFAULT_CONVERGENCE_N,
    DEFAULT_CONVERGENCE_SEEDS,
    DEFAULT_ITERATIONS,
    DEFAULT_RATIO,
    DEFAULT_SEED,
    HIGH_RANGE,
    LOW_RANGE,
    ProjectBand,
    SimulationConfig,
    compare_with_analytic,
    convergence_study,
    run_simulation,
    run_sweep,
)


class UsageError(Exception):
    """Bad command-line usage that argparse cannot catch on its own."""


def _err(message: str) -> None:
    print(f"roierr: error: {message}", file=sys.stderr)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _add_format_options(sub: argparse.ArgumentParser, default_format: str) -> None:
    sub.add_argument(
        "--format", choices=("csv", "json"), default=default_format,
        help=f"output format (default: {default_format})",
    )
    sub.add_argument(
        "--percent", action="store_true",
        help="display fraction-valued fields as percent (multiplied by 100)",
    )


def _add_engine_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--seed", type=int, default=DEFAULT_SEED,
        help=f"random seed, 64-bit unsigned (default: {DEFAULT_SEED})",
    )
    sub.add_argument(
        "--workers", type=int, default=1,
        help="worker threads; any value gives identical results (default: 1)",
    )
    sub.add_argument(
        "--chunk-size", type=int, default=65_536,
        help="iterations per work chunk; any value gives identical results",
    )


def _add_case_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "scenario", nargs="?", default=None,
        help="scenario file; its totals supply cost, ratio and default errors",
    )
    sub.add_argument("--cost", type=float, default=None, help="explicit actual cost")
    sub.add_argument(
        "--band", choices=("small", "medium", "large"), default=None,
        help="draw the actual cost from a project size band",
    )
    sub.add_argument(
        "--ratio", type=float, default=None,
        help=f"actual benefit/cost ratio (default: {DEFAULT_RATIO}, or the scenario's)",
    )
    sub.add_argument(
        "--e-benefit", type=float, default=None,
        help="relative benefit error, fraction in [0, 1]",
    )
    sub.add_argument(
        "--e-cost", type=float, default=None,
        help="relative cost error, fraction in [0, 0.999)",
    )
    sub.add_argument(
        "--mode", choices=("sum", "quadrature"), default="sum",
        help="how scenario component errors aggregate (default: sum)",
    )


def _add_figures_option(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--figures", metavar="DIR", default=None,
        help="also render a PNG figure of this report into DIR",
    )


def _resolve_case(args) -> tuple[float, ProjectBand | None, float, float, float]:
    """Turn (scenario file | --cost | --band) plus flags into config inputs.

    Returns (cost, band, ratio, e_benefit, e_cost); cost is ignored when a
    band is chosen.  With a scenario file, ratio and the relative errors
    default to the file's aggregated totals under --mode.
    """
    sources = [s for s in (args.scenario, args.cost, args.band) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one case source: a scenario file, --cost, or --band")
    if args.scenario is not None:
        scenario = load_scenario(args.scenario)
        aggregate = aggregate_error_sum if args.mode == "sum" else aggregate_error_quadrature
        cost_total = Estimate(
            total_value(scenario.cost_estimates()),
            aggregate([est.abs_error for est in scenario.cost_estimates()]),
        )
        benefit_total = Estimate(
            total_value(scenario.benefit_estimates()),
            aggregate([est.abs_error for est in scenario.benefit_estimates()]),
        )
        cost = cost_total.value
        ratio = args.ratio if args.ratio is not None else benefit_total.value / cost_total.value
        e_benefit = (
            args.e_benefit if args.e_benefit is not None else relative_error_of(benefit_total)
        )
        e_cost = args.e_cost if args.e_cost is not None else relative_error_of(cost_total)
        return cost, None, ratio, e_benefit, e_cost
    if args.e_benefit is None or args.e_cost is None:
        raise UsageError("--e-benefit and --e-cost are required without a scenario file")
    band = ProjectBand.from_name(args.band) if args.band is not None else None
    ratio = args.ratio if args.ratio is not None else DEFAULT_RATIO
    return args.cost, band, ratio, args.e_benefit, args.e_cost


def _parse_sweep_range(text: str) -> tuple[float, float]:
    if text == "low":
        return LOW_RANGE
    if text == "high":
        return HIGH_RANGE
    parts = text.split(":")
    if len(parts) == 2:
        try:
            return float(parts[0]), float(parts[1])
        except ValueError:
            pass
    raise UsageError(f"--range must be 'low', 'high', or START:STOP, got {text!r}")


def _cmd_analyze(args) -> int:
    report = scenario_error_report(load_scenario(args.scenario), args.mode)
    sys.stdout.write(emit(report, args.format, percent=args.percent))
    return 0


def _cmd_simulate(args) -> int:
    cost, band, ratio, e_benefit, e_cost = _resolve_case(args)
    config = SimulationConfig(
        e_benefit=e_benefit,
        e_cost=e_cost,
        cost=cost if band is None else None,
        band=band,
        benefit_cost_ratio=ratio,
        iterations=args.iterations,
        seed=args.seed,
    )
    result = run_simulation(
        config,
        workers=args.workers,
        chunk_size=args.chunk_size,
        keep_draws=args.figures is not None,
    )
    comparison = compare_with_analytic(result)
    sys.stdout.write(emit_simulation(result, comparison, args.format, percent=args.percent))
    if args.figures is not None:
        from .plots import save_draws_figure

        path = save_draws_figure(result, Path(args.figures) / "simulate_draws.png")
        _note(f"wrote figure: {path}")
    return 0


def _cmd_sweep(args) -> int:
    start, stop = _parse_sweep_range(args.range)
    rows = run_sweep(
        start, stop, args.step,
        ratio=args.ratio if args.ratio is not None else DEFAULT_RATIO,
        iterations=args.iterations,
        seed=args.seed,
        workers=args.workers,
        chunk_size=args.chunk_size,
    )
    sys.stdout.write(emit(rows, args.format, percent=args.percent))
    if args.figures is not None:
        from .plots import save_sweep_figure

        path = save_sweep_figure(rows, Path(args.figures) / "sweep.png")
        _note(f"wrote figure: {path}")
    return 0


def _cmd_validity(args) -> int:
    rows = taylor_validity_table(args.max, args.step)
    sys.stdout.write(emit(rows, args.format, percent=args.percent))
    if args.figures is not None:
        from .plots import save_validity_figure

        path = save_validity_figure(rows, Path(args.figures) / "validity.png")
        _note(f"wrote figure: {path}")
    return 0


def _cmd_convergence(args) -> int:
    cost, band, ratio, e_benefit, e_cost = _resolve_case(args)
    config = SimulationConfig(
        e_benefit=e_benefit,
        e_cost=e_cost,
        cost=cost if band is None else None,
        band=band,
        benefit_cost_ratio=ratio,
        seed=args.seed,
    )
    rows = convergence_study(
        config,
        tuple(args.n_list),
        args.seeds,
        workers=args.workers,
        chunk_size=args.chunk_size,
    )
    sys.stdout.write(emit(rows, args.format, percent=args.percent))
    if args.figures is not None:
        from .plots import save_convergence_figure

        path = save_convergence_figure(rows, Path(args.figures) / "convergence.png")
        _note(f"wrote figure: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roierr",
        description=(
            "Quantify how accurate an ROI evaluation is: propagate benefit and "
            "cost errors through the ROI formula analytically, and measure the "
            "resulting ROI error distribution by seeded Monte Carlo."
        ),
        epilog="exit codes: 0 success, 1 computation/domain error, 2 usage/parse error",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "analyze",
        help="propagate scenario errors analytically into a full error report",
    )
    p.add_argument("scenario", help="scenario file (JSON)")
    p.add_argument(
        "--mode", choices=("sum", "quadrature"), default="sum",
        help="aggregate component errors by plain sum or in quadrature (default: sum)",
    )
    _add_format_options(p, "json")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser(
        "simulate",
        help="run one seeded Monte Carlo measurement and compare with the analytic forms",
    )
    _add_case_options(p)
    p.add_argument(
        "--iterations", type=int, default=DEFAULT_ITERATIONS,
        help=f"number of draws (default: {DEFAULT_ITERATIONS})",
    )
    _add_engine_options(p)
    _add_format_options(p, "json")
    _add_figures_option(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "sweep",
        help="mean absolute ROI error over a grid of equal relative errors",
    )
    p.add_argument(
        "--range", default="low",
        help="'low' (0 to 0.45), 'high' (0.40 to 0.95), or START:STOP (default: low)",
    )
    p.add_argument("--step", type=float, default=0.05, help="grid step (default: 0.05)")
    p.add_argument(
        "--ratio", type=float, default=None,
        help=f"benefit/cost ratio (default: {DEFAULT_RATIO})",
    )
    p.add_argument(
        "--iterations", type=int, default=DEFAULT_ITERATIONS,
        help=f"draws per grid point (default: {DEFAULT_ITERATIONS})",
    )
    _add_engine_options(p)
    _add_format_options(p, "csv")
    _add_figures_option(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "validity",
        help="tabulate the exact quotient factor against its first-order approximation",
    )
    p.add_argument(
        "--max", type=float, default=0.95,
        help="largest relative error tabulated (default: 0.95)",
    )
    p.add_argument("--step", type=float, default=0.05, help="grid step (default: 0.05)")
    _add_format_options(p, "csv")
    _add_figures_option(p)
    p.set_defaults(func=_cmd_validity)

    p = sub.add_parser(
        "convergence",
        help="how the error statistic settles as the iteration count grows",
    )
    _add_case_options(p)
    p.add_argument(
        "--seeds", type=int, default=DEFAULT_CONVERGENCE_SEEDS,
        help=f"distinct seeds per run length (default: {DEFAULT_CONVERGENCE_SEEDS})",
    )
    p.add_argument(
        "--n-list", type=int, nargs="+", default=list(DEFAULT_CONVERGENCE_N),
        help="ascending run lengths (default: %(default)s)",
    )
    _add_engine_options(p)
    _add_format_options(p, "csv")
    _add_figures_option(p)
    p.set_defaults(func=_cmd_convergence)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except ScenarioFormatError as exc:
        _err(f"scenario: {exc}")
        return 2
    except FileNotFoundError as exc:
        _err(f"cannot read {exc.filename}: no such file")
        return 2
    except IsADirectoryError as exc:
        _err(f"cannot read {exc.filename}: is a directory")
        return 2
    except OSError as exc:
        _err(f"cannot read input: {exc}")
        return 2
    except UsageError as exc:
        _err(str(exc))
        return 2
    except DomainError as exc:
        _err(str(exc))
        return 1


def entry() -> None:
    sys.exit(main())
