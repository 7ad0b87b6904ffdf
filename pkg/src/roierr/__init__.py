"""Accuracy analysis for ROI evaluations.

Two complementary tools around the ROI formula R = (B - C) / C:

  * propagation: exact worst-case ROI bounds and first-order error forms
    (worst-case and independent-error flavors), component aggregation, and
    a table quantifying where the first-order forms break down.
  * simulation: a reproducible counter-based Monte Carlo engine measuring
    the realized ROI error distribution under uniform input errors, with
    sweeps over error grids and convergence studies over run lengths.

All ROI and error values are dimensionless fractions (1.0 is 100%).
"""

from .core import (
    DomainError,
    Estimate,
    LineItem,
    Scenario,
    compute_roi,
    relative_error_of,
    total_value,
)
from .io import (
    ScenarioFormatError,
    emit,
    emit_simulation,
    load_scenario,
    parse_scenario,
    scenario_to_document,
)
from .propagation import (
    ErrorReport,
    ValidityRow,
    aggregate_error_quadrature,
    aggregate_error_sum,
    exact_worst_case_bounds,
    max_probable_error,
    probable_error,
    relative_form,
    scenario_error_report,
    taylor_validity_table,
)
from .randomness import CounterStream, spawned_seed
from .simulation import (
    DEFAULT_CONVERGENCE_N,
    DEFAULT_CONVERGENCE_SEEDS,
    DEFAULT_ITERATIONS,
    DEFAULT_RATIO,
    DEFAULT_SEED,
    E_COST_CAP,
    HIGH_RANGE,
    LOW_RANGE,
    AnalyticComparison,
    Case,
    ConvergenceRow,
    DrawRecord,
    DrawStats,
    ProjectBand,
    SimulationConfig,
    SimulationResult,
    SweepRow,
    build_case,
    compare_with_analytic,
    convergence_study,
    run_simulation,
    run_sweep,
    sample_draw,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticComparison",
    "Case",
    "ConvergenceRow",
    "CounterStream",
    "DEFAULT_CONVERGENCE_N",
    "DEFAULT_CONVERGENCE_SEEDS",
    "DEFAULT_ITERATIONS",
    "DEFAULT_RATIO",
    "DEFAULT_SEED",
    "DomainError",
    "DrawRecord",
    "DrawStats",
    "E_COST_CAP",
    "ErrorReport",
    "Estimate",
    "HIGH_RANGE",
    "LOW_RANGE",
    "LineItem",
    "ProjectBand",
    "Scenario",
    "ScenarioFormatError",
    "SimulationConfig",
    "SimulationResult",
    "SweepRow",
    "ValidityRow",
    "aggregate_error_quadrature",
    "aggregate_error_sum",
    "build_case",
    "compare_with_analytic",
    "compute_roi",
    "convergence_study",
    "emit",
    "emit_simulation",
    "exact_worst_case_bounds",
    "load_scenario",
    "max_probable_error",
    "parse_scenario",
    "probable_error",
    "relative_error_of",
    "relative_form",
    "run_simulation",
    "run_sweep",
    "sample_draw",
    "scenario_error_report",
    "scenario_to_document",
    "taylor_validity_table",
    "total_value",
]
