"""Core value types for ROI evaluations.

Monetary amounts are abstract non-negative reals: no currency, no rounding.
ROI is kept as a dimensionless fraction everywhere (1.0 means 100%); percent
is a display concern handled at the output edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An input is outside the mathematical domain of the requested operation."""


def _check_money(amount: float, what: str) -> float:
    amount = float(amount)
    if not math.isfinite(amount):
        raise DomainError(f"{what} must be finite, got {amount!r}")
    if amount < 0:
        raise DomainError(f"{what} must be non-negative, got {amount!r}")
    return amount


@dataclass(frozen=True)
class Estimate:
    """A monetary value together with its absolute error bound."""

    value: float
    abs_error: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _check_money(self.value, "estimate value"))
        object.__setattr__(self, "abs_error", _check_money(self.abs_error, "estimate error"))

    @classmethod
    def from_relative(cls, value: float, rel_error: float) -> "Estimate":
        """Build an Estimate from a relative error fraction (0.1 means +/-10%)."""
        value = _check_money(value, "estimate value")
        if value == 0:
            raise DomainError("relative error is undefined for a zero value")
        rel_error = float(rel_error)
        if not math.isfinite(rel_error) or rel_error < 0:
            raise DomainError(f"relative error must be a non-negative finite fraction, got {rel_error!r}")
        return cls(value, value * rel_error)


@dataclass(frozen=True)
class LineItem:
    """One labeled benefit or cost component of a scenario."""

    label: str
    estimate: Estimate


@dataclass(frozen=True)
class Scenario:
    """An itemized ROI evaluation: named lists of benefit and cost components.

    Benefits may be empty (analysis of such a scenario fails later, at the
    operation that needs a positive benefit).  Costs may not: at least one
    cost item is required, the cost total must be positive, and the summed
    cost errors must stay below the summed cost values, otherwise the
    worst-case cost can reach zero and every quotient downstream loses
    meaning.
    """

    name: str
    benefits: tuple[LineItem, ...]
    costs: tuple[LineItem, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "benefits", tuple(self.benefits))
        object.__setattr__(self, "costs", tuple(self.costs))
        if not self.costs:
            raise DomainError("scenario needs at least one cost item")
        cost_total = total_value([item.estimate for item in self.costs])
        if cost_total <= 0:
            raise DomainError("total cost must be positive")
        cost_error = math.fsum(item.estimate.abs_error for item in self.costs)
        if cost_error >= cost_total:
            raise DomainError(
                f"cost error >= 100%: summed cost error {cost_error!r} "
                f"reaches summed cost {cost_total!r}"
            )

    def benefit_estimates(self) -> list[Estimate]:
        return [item.estimate for item in self.benefits]

    def cost_estimates(self) -> list[Estimate]:
        return [item.estimate for item in self.costs]


def compute_roi(benefit: float, cost: float) -> float:
    """Return (benefit - cost) / cost as a fraction.

    compute_roi(150_000, 120_000) == 0.25, i.e. a 25% return.
    """
    benefit = _check_money(benefit, "benefit")
    cost = float(cost)
    if not math.isfinite(cost) or cost <= 0:
        raise DomainError(f"cost must be positive and finite, got {cost!r}")
    return (benefit - cost) / cost


def total_value(components: list[Estimate] | tuple[Estimate, ...]) -> float:
    """Sum of component values, exactly rounded so ordering cannot matter."""
    return math.fsum(est.value for est in components)


def relative_error_of(estimate: Estimate) -> float:
    """abs_error / value; undefined (a domain error) for a zero value."""
    if estimate.value == 0:
        raise DomainError("relative error is undefined for a zero value")
    return estimate.abs_error / estimate.value
