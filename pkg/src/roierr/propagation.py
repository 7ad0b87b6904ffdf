"""Analytic error propagation through the ROI quotient.

For an evaluation with benefit estimate B +/- dB and cost estimate C +/- dC,
the estimated ROI is R = (B - C)/C and the propagated error measures are

    worst-case bounds   upper = (B + dB)/(C - dC) - 1
                        lower = (B - dB)/(C + dC) - 1
    max probable error  dR ~= (B/C) * (dB/B + dC/C)
    probable error      dR ~= (B/C) * sqrt((dB/B)^2 + (dC/C)^2)

The worst-case bounds are exact interval endpoints.  The two probable-error
forms are first order in the relative errors: the same expression falls out
of rearranging the bounds and dropping second-order terms, of a binomial
expansion of 1/(1 - x), and of a total-differential bound, so only one
implementation exists here.  The max form adds the relative errors (errors
conspire), the probable form adds them in quadrature (errors independent).

First-order means the approximation degrades as the relative cost error
grows; taylor_validity_table quantifies exactly that degradation, and the
Monte Carlo engine in the simulation module measures the realized error
distribution the approximations are standing in for.

Itemized scenarios are handled by aggregating component errors into total
benefit and cost estimates first (plain sums for conspiring errors,
root-sum-square for independent ones) and then propagating the totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Literal

from .core import DomainError, Estimate, Scenario, compute_roi, total_value

AggregationMode = Literal["sum", "quadrature"]


@dataclass(frozen=True)
class ErrorReport:
    """Every propagated error measure for one scenario, from aggregated totals."""

    roi: float
    max_probable_error: float
    probable_error: float
    roi_lower: float
    roi_upper: float
    relative_max_error: float | None
    benefit_total: Estimate
    cost_total: Estimate
    aggregation_mode: AggregationMode


@dataclass(frozen=True)
class ValidityRow:
    """One sample of how far 1 + x drifts from the exact factor 1/(1 - x)."""

    rel_error: float
    exact: float
    approx: float
    relative_gap: float


def _require_positive_values(benefit: Estimate, cost: Estimate) -> None:
    if benefit.value == 0:
        raise DomainError("benefit value must be positive for a relative error form")
    if cost.value == 0:
        raise DomainError("cost value must be positive for a relative error form")


def max_probable_error(benefit: Estimate, cost: Estimate) -> float:
    """Worst-case first-order ROI error: (B/C) * (dB/B + dC/C)."""
    _require_positive_values(benefit, cost)
    ratio = benefit.value / cost.value
    return ratio * (benefit.abs_error / benefit.value + cost.abs_error / cost.value)


def probable_error(benefit: Estimate, cost: Estimate) -> float:
    """Independent-error ROI error: (B/C) * hypot(dB/B, dC/C)."""
    _require_positive_values(benefit, cost)
    ratio = benefit.value / cost.value
    rel_b = benefit.abs_error / benefit.value
    rel_c = cost.abs_error / cost.value
    # hypot rather than sqrt(b*b + c*c): exact when a component is zero, so
    # the result never drifts an ulp above the max probable error.
    return ratio * math.hypot(rel_b, rel_c)


def exact_worst_case_bounds(benefit: Estimate, cost: Estimate) -> tuple[float, float]:
    """Exact (lower, upper) ROI interval endpoints, no linearization.

    The upper endpoint pairs the largest benefit with the smallest cost, the
    lower endpoint the reverse.  Requires dC < C (otherwise the worst-case
    cost reaches zero) and dB <= B (otherwise the worst-case benefit goes
    negative and the interval leaves ROI's domain).
    """
    if cost.value <= 0:
        raise DomainError("cost value must be positive")
    if cost.abs_error >= cost.value:
        raise DomainError(
            f"worst-case cost reaches zero: cost error {cost.abs_error!r} "
            f">= cost value {cost.value!r}"
        )
    if benefit.abs_error > benefit.value:
        raise DomainError(
            f"negative worst-case benefit: benefit error {benefit.abs_error!r} "
            f"> benefit value {benefit.value!r}"
        )
    # (X - Y)/Y rather than X/Y - 1: avoids cancellation when the quotient
    # sits near 1, and collapses bit-exactly onto the ROI when both errors
    # are zero.
    worst_benefit_low = benefit.value - benefit.abs_error
    worst_benefit_high = benefit.value + benefit.abs_error
    worst_cost_high = cost.value + cost.abs_error
    worst_cost_low = cost.value - cost.abs_error
    lower = (worst_benefit_low - worst_cost_high) / worst_cost_high
    upper = (worst_benefit_high - worst_cost_low) / worst_cost_low
    return lower, upper


def relative_form(delta_r: float, roi: float) -> float:
    """Express an absolute ROI error relative to the ROI estimate itself.

    Literally delta_r / |roi|.  Note this equals the relative error of the
    benefit/cost quotient only when the quantity under study is the pure
    quotient B/C; for R = B/C - 1 the subtraction of 1 shifts the reference
    point, so treat the result as "error per unit of estimated ROI", nothing
    more.
    """
    if roi == 0:
        raise DomainError("relative form is undefined at zero ROI")
    if delta_r < 0:
        raise DomainError(f"error measure must be non-negative, got {delta_r!r}")
    return delta_r / abs(roi)


def aggregate_error_sum(errors: list[float] | tuple[float, ...]) -> float:
    """Total error when component errors can all conspire: the plain sum."""
    errors = _checked_errors(errors)
    return math.fsum(errors)


def aggregate_error_quadrature(errors: list[float] | tuple[float, ...]) -> float:
    """Total error for independent components: root-sum-square.

    Scales by the largest component before squaring so the result neither
    underflows nor overflows, and a single component comes back unchanged.
    """
    errors = _checked_errors(errors)
    largest = max(errors, default=0.0)
    if largest == 0.0:
        return 0.0
    return largest * math.sqrt(math.fsum((e / largest) ** 2 for e in errors))


def _checked_errors(errors) -> list[float]:
    out = []
    for e in errors:
        e = float(e)
        if not math.isfinite(e) or e < 0:
            raise DomainError(f"component errors must be non-negative and finite, got {e!r}")
        out.append(e)
    return out


def scenario_error_report(scenario: Scenario, mode: AggregationMode = "sum") -> ErrorReport:
    """Aggregate an itemized scenario and propagate every error measure.

    mode selects how component errors combine into the benefit and cost
    totals: "sum" when they can conspire, "quadrature" when they are
    independent.  Both the first-order error forms and the exact worst-case
    bounds are then computed from the aggregated totals.
    """
    if mode not in ("sum", "quadrature"):
        raise DomainError(f"unknown aggregation mode {mode!r}")
    aggregate = aggregate_error_sum if mode == "sum" else aggregate_error_quadrature

    benefit_items = scenario.benefit_estimates()
    cost_items = scenario.cost_estimates()
    benefit_total = Estimate(
        total_value(benefit_items),
        aggregate([est.abs_error for est in benefit_items]),
    )
    cost_total = Estimate(
        total_value(cost_items),
        aggregate([est.abs_error for est in cost_items]),
    )
    if cost_total.abs_error >= cost_total.value:
        raise DomainError(
            f"aggregated cost error {cost_total.abs_error!r} reaches "
            f"aggregated cost {cost_total.value!r}"
        )

    roi = compute_roi(benefit_total.value, cost_total.value)
    max_err = max_probable_error(benefit_total, cost_total)
    prob_err = probable_error(benefit_total, cost_total)
    lower, upper = exact_worst_case_bounds(benefit_total, cost_total)
    rel_max = relative_form(max_err, roi) if roi != 0 else None
    return ErrorReport(
        roi=roi,
        max_probable_error=max_err,
        probable_error=prob_err,
        roi_lower=lower,
        roi_upper=upper,
        relative_max_error=rel_max,
        benefit_total=benefit_total,
        cost_total=cost_total,
        aggregation_mode=mode,
    )


def taylor_validity_table(max_x: float = 0.95, step: float = 0.05) -> list[ValidityRow]:
    """Tabulate 1/(1 - x) against its first-order approximation 1 + x.

    Rows run x = 0, step, 2*step, ... up to max_x inclusive.  The relative
    gap (exact - approx)/exact equals x*x algebraically, so it passes 1% at
    x = 0.1 and 25% at x = 0.5: the quantitative case for not trusting the
    first-order error forms once relative errors grow large.

    The grid is built with decimal arithmetic on the given numerals so the
    last row lands exactly on max_x instead of drifting past it in binary.
    """
    max_x = float(max_x)
    step = float(step)
    if not (0 < step <= max_x):
        raise DomainError(f"need 0 < step <= max_x, got step={step!r} max_x={max_x!r}")
    if max_x >= 1:
        raise DomainError(f"max_x must stay below 1, got {max_x!r}")
    d_step = Decimal(repr(step))
    d_max = Decimal(repr(max_x))
    rows = []
    k = 0
    while k * d_step <= d_max:
        x = float(k * d_step)
        exact = 1.0 / (1.0 - x)
        approx = 1.0 + x
        rows.append(ValidityRow(x, exact, approx, (exact - approx) / exact))
        k += 1
    return rows
