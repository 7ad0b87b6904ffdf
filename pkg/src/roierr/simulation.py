"""Monte Carlo measurement of ROI estimation error.

A case is a project with actual cost C (drawn from a size band or given
explicitly) and actual benefit B = C * ratio, so the true ROI is ratio - 1.
Each iteration perturbs both figures by independent uniform relative errors,

    sampled_benefit = B * (1 + u * e_benefit)      u, v uniform on [-1, 1)
    sampled_cost    = C * (1 + v * e_cost)

recomputes the ROI an evaluator would report, and the run's headline number
is the mean absolute gap between that and the true ROI.

Sampling runs in relative space: the estimated ROI is computed as

    roi_est = ratio * (1 + u * e_benefit) / (1 + v * e_cost) - 1

which never touches the monetary scale, so runs at cost 100 and cost
1,300,000 with the same seed produce bit-identical roi_est sequences and
error statistics.  Scale invariance here is exact, not statistical.

Determinism contract: iteration i consumes only counter positions derived
from (seed, i), the reduction is an exactly-rounded sum, and summary
statistics are taken over the index-ordered array, so results do not depend
on chunk size or worker count.  Same config, same seed: same bits.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .core import DomainError, Estimate
from .propagation import exact_worst_case_bounds, max_probable_error, probable_error
from .randomness import SEED_BOUND, CounterStream, spawned_seed

DEFAULT_RATIO = 2.0
DEFAULT_ITERATIONS = 30_000
DEFAULT_SEED = 42
DEFAULT_CONVERGENCE_N = (1_000, 5_000, 15_000, 20_000, 30_000, 100_000)
DEFAULT_CONVERGENCE_SEEDS = 20

# Cost errors of 99.9% and above put the worst-case cost at or through zero;
# the sampled quotient still exists below 1 but its mean is useless noise.
E_COST_CAP = 0.999

# e grids of the two standard relative-error sweeps.
LOW_RANGE = (0.0, 0.45)
HIGH_RANGE = (0.40, 0.95)

# Counter-position layout for one run: position 0 seeds the case cost,
# iteration i reads its benefit deviate at 2i+1 and its cost deviate at 2i+2.
_POS_CASE = 0


class ProjectBand(enum.Enum):
    """Project size bands; cost ranges are in thousands."""

    SMALL = (100.0, 500.0)
    MEDIUM = (501.0, 900.0)
    LARGE = (901.0, 1_300.0)

    @property
    def cost_range(self) -> tuple[float, float]:
        return self.value

    @classmethod
    def from_name(cls, name: str) -> "ProjectBand":
        try:
            return cls[name.upper()]
        except KeyError:
            raise DomainError(f"unknown project band {name!r}") from None


class Case(NamedTuple):
    """One concrete project: actual benefit, actual cost, true ROI."""

    benefit: float
    cost: float
    roi: float


def _check_fraction(value: float, what: str, top: float, top_inclusive: bool) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"{what} must be a non-negative finite fraction, got {value!r}")
    if value > top or (value == top and not top_inclusive):
        bound = "<=" if top_inclusive else "<"
        raise DomainError(f"{what} must be {bound} {top}, got {value!r}")
    return value


@dataclass(frozen=True)
class SimulationConfig:
    """Everything a run depends on; two configs equal means two runs equal.

    Exactly one of band / cost picks the case source.  e_benefit may reach
    1.0 (a sampled benefit of zero); e_cost is capped below 1 because the
    sampled cost sits in a denominator.
    """

    e_benefit: float
    e_cost: float
    cost: float | None = None
    band: ProjectBand | None = None
    benefit_cost_ratio: float = DEFAULT_RATIO
    iterations: int = DEFAULT_ITERATIONS
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "e_benefit",
            _check_fraction(self.e_benefit, "e_benefit", 1.0, top_inclusive=True),
        )
        object.__setattr__(
            self, "e_cost",
            _check_fraction(self.e_cost, "e_cost", E_COST_CAP, top_inclusive=False),
        )
        if (self.cost is None) == (self.band is None):
            raise DomainError("give exactly one case source: an explicit cost or a band")
        if self.cost is not None:
            cost = float(self.cost)
            if not math.isfinite(cost) or cost <= 0:
                raise DomainError(f"explicit cost must be positive and finite, got {self.cost!r}")
            object.__setattr__(self, "cost", cost)
        ratio = float(self.benefit_cost_ratio)
        if not math.isfinite(ratio) or ratio <= 0:
            raise DomainError(f"benefit/cost ratio must be positive and finite, got {ratio!r}")
        object.__setattr__(self, "benefit_cost_ratio", ratio)
        if not isinstance(self.iterations, (int, np.integer)) or isinstance(self.iterations, bool):
            raise DomainError(f"iterations must be an integer, got {self.iterations!r}")
        if self.iterations < 1:
            raise DomainError(f"iterations must be at least 1, got {self.iterations!r}")
        object.__setattr__(self, "iterations", int(self.iterations))
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise DomainError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= int(self.seed) < SEED_BOUND:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class DrawRecord:
    """One iteration: the perturbed figures and the ROI computed from them."""

    index: int
    sampled_benefit: float
    sampled_cost: float
    roi_est: float


@dataclass(frozen=True)
class DrawStats:
    """Distribution summary of the per-draw estimated ROI."""

    mean: float
    std: float
    min: float
    max: float
    p5: float
    p50: float
    p95: float


@dataclass(frozen=True)
class SimulationResult:
    """Outcome of one seeded run."""

    config: SimulationConfig
    cost_actual: float
    benefit_actual: float
    actual_roi: float
    mean_abs_error: float
    draw_stats: DrawStats
    draws: tuple[DrawRecord, ...] | None = None

    @property
    def iterations(self) -> int:
        return self.config.iterations

    @property
    def seed(self) -> int:
        return self.config.seed


@dataclass(frozen=True)
class SweepRow:
    """mean absolute ROI error at one grid value of e_benefit = e_cost = e."""

    e: float
    delta_r: float
    ratio: float
    iterations: int
    seed: int


@dataclass(frozen=True)
class ConvergenceRow:
    """Across-seed spread and mean of the error statistic at one run length."""

    n: int
    spread: float
    mean_delta_r: float


@dataclass(frozen=True)
class AnalyticComparison:
    """Propagated error measures next to the measured Monte Carlo error."""

    max_probable_error: float
    probable_error: float
    roi_lower: float
    roi_upper: float
    mc_mean_abs_error: float
    draws_contained: bool
    probable_le_max: bool


def build_case(band_or_cost: ProjectBand | float, ratio: float, stream: CounterStream) -> Case:
    """Fix a project: draw (or accept) the cost, derive benefit = cost * ratio.

    The true ROI is ratio - 1 by construction.  A band cost is uniform over
    the band's range, read from the stream's case position so the remaining
    positions stay reserved for the iteration deviates.
    """
    ratio = float(ratio)
    if not math.isfinite(ratio) or ratio <= 0:
        raise DomainError(f"benefit/cost ratio must be positive and finite, got {ratio!r}")
    if isinstance(band_or_cost, ProjectBand):
        lo, hi = band_or_cost.cost_range
        cost = lo + stream.unit(_POS_CASE) * (hi - lo)
    else:
        cost = float(band_or_cost)
        if not math.isfinite(cost) or cost <= 0:
            raise DomainError(f"explicit cost must be positive and finite, got {band_or_cost!r}")
    return Case(benefit=cost * ratio, cost=cost, roi=ratio - 1.0)


def sample_draw(
    benefit_actual: float,
    cost_actual: float,
    e_benefit: float,
    e_cost: float,
    stream: CounterStream,
    index: int = 0,
) -> DrawRecord:
    """Produce iteration `index` of a run, addressed directly.

    Pure in (stream seed, index): sampling the same index twice gives the
    same record, and indices can be visited in any order.
    """
    e_benefit = _check_fraction(e_benefit, "e_benefit", 1.0, top_inclusive=True)
    e_cost = _check_fraction(e_cost, "e_cost", E_COST_CAP, top_inclusive=False)
    cost_actual = float(cost_actual)
    if not math.isfinite(cost_actual) or cost_actual <= 0:
        raise DomainError(f"actual cost must be positive and finite, got {cost_actual!r}")
    benefit_actual = float(benefit_actual)
    if not math.isfinite(benefit_actual) or benefit_actual < 0:
        raise DomainError(f"actual benefit must be non-negative and finite, got {benefit_actual!r}")
    index = int(index)
    if index < 0:
        raise DomainError(f"draw index must be non-negative, got {index!r}")
    ratio = benefit_actual / cost_actual
    u = stream.signed(2 * index + 1)
    v = stream.signed(2 * index + 2)
    factor_b = 1.0 + u * e_benefit
    factor_c = 1.0 + v * e_cost
    return DrawRecord(
        index=index,
        sampled_benefit=benefit_actual * factor_b,
        sampled_cost=cost_actual * factor_c,
        roi_est=ratio * factor_b / factor_c - 1.0,
    )


def _fill_chunk(stream, ratio, e_benefit, e_cost, lo, hi, roi_est, factors):
    idx = np.arange(lo, hi, dtype=np.uint64)
    u = stream.signed(np.uint64(2) * idx + np.uint64(1))
    v = stream.signed(np.uint64(2) * idx + np.uint64(2))
    factor_b = 1.0 + u * e_benefit
    factor_c = 1.0 + v * e_cost
    roi_est[lo:hi] = ratio * factor_b / factor_c - 1.0
    if factors is not None:
        factors[0][lo:hi] = factor_b
        factors[1][lo:hi] = factor_c


def run_simulation(
    config: SimulationConfig,
    *,
    workers: int = 1,
    chunk_size: int = 65_536,
    keep_draws: bool = False,
) -> SimulationResult:
    """Run one seeded Monte Carlo measurement.

    workers and chunk_size only schedule the work; any setting of either
    yields bit-identical results (each chunk derives its deviates from
    absolute iteration indices, and the reduction is math.fsum over the
    index-ordered error array).  keep_draws attaches every DrawRecord to the
    result; leave it off for large runs.
    """
    if not isinstance(workers, int) or workers < 1:
        raise DomainError(f"workers must be a positive integer, got {workers!r}")
    if not isinstance(chunk_size, int) or chunk_size < 1:
        raise DomainError(f"chunk_size must be a positive integer, got {chunk_size!r}")

    stream = CounterStream(config.seed)
    case = build_case(
        config.band if config.band is not None else config.cost,
        config.benefit_cost_ratio,
        stream,
    )
    n = config.iterations
    ratio = config.benefit_cost_ratio
    roi_est = np.empty(n, dtype=np.float64)
    factors = (
        (np.empty(n, dtype=np.float64), np.empty(n, dtype=np.float64))
        if keep_draws
        else None
    )
    spans = [(lo, min(lo + chunk_size, n)) for lo in range(0, n, chunk_size)]
    if workers == 1 or len(spans) == 1:
        for lo, hi in spans:
            _fill_chunk(stream, ratio, config.e_benefit, config.e_cost, lo, hi, roi_est, factors)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(
                pool.map(
                    lambda span: _fill_chunk(
                        stream, ratio, config.e_benefit, config.e_cost,
                        span[0], span[1], roi_est, factors,
                    ),
                    spans,
                )
            )

    abs_error = np.abs(case.roi - roi_est)
    mean_abs_error = math.fsum(abs_error) / n
    p5, p50, p95 = np.percentile(roi_est, [5.0, 50.0, 95.0])
    stats = DrawStats(
        mean=float(roi_est.mean()),
        std=float(roi_est.std()),
        min=float(roi_est.min()),
        max=float(roi_est.max()),
        p5=float(p5),
        p50=float(p50),
        p95=float(p95),
    )
    draws = None
    if keep_draws:
        factor_b, factor_c = factors
        draws = tuple(
            DrawRecord(
                index=i,
                sampled_benefit=case.benefit * factor_b[i],
                sampled_cost=case.cost * factor_c[i],
                roi_est=float(roi_est[i]),
            )
            for i in range(n)
        )
    return SimulationResult(
        config=config,
        cost_actual=case.cost,
        benefit_actual=case.benefit,
        actual_roi=case.roi,
        mean_abs_error=mean_abs_error,
        draw_stats=stats,
        draws=draws,
    )


def _decimal_grid(start: float, stop: float, step: float) -> list[float]:
    """Grid start, start+step, ... capped at stop, built in decimal.

    Binary accumulation both drifts (19 * 0.05 prints as 0.9500000000000001)
    and can overshoot the stop bound; constructing from the decimal numerals
    gives grid points that echo cleanly and land exactly on the endpoints.
    """
    from decimal import Decimal

    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise DomainError("sweep range and step must be finite")
    if step <= 0:
        raise DomainError(f"step must be positive, got {step!r}")
    if stop < start:
        raise DomainError(f"empty sweep range: stop {stop!r} below start {start!r}")
    d_start = Decimal(repr(float(start)))
    d_stop = Decimal(repr(float(stop)))
    d_step = Decimal(repr(float(step)))
    values = []
    k = 0
    while d_start + k * d_step <= d_stop:
        values.append(float(d_start + k * d_step))
        k += 1
    return values


def run_sweep(
    start: float,
    stop: float,
    step: float = 0.05,
    *,
    ratio: float = DEFAULT_RATIO,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    chunk_size: int = 65_536,
) -> list[SweepRow]:
    """Measure the error statistic over a grid of equal relative errors.

    Every grid point reuses the same seed, hence the same underlying
    (u, v) deviates (common random numbers): differences between rows are
    purely the effect of e, so the curve is deterministically monotone
    rather than monotone-up-to-noise.  The standard grids are LOW_RANGE
    (0 to 0.45) and HIGH_RANGE (0.40 to 0.95), step 0.05.

    delta_r does not depend on the monetary scale, so the sweep runs on a
    nominal explicit cost.
    """
    grid = _decimal_grid(start, stop, step)
    if grid[0] < 0:
        raise DomainError(f"relative errors cannot be negative, grid starts at {grid[0]!r}")
    if grid[-1] >= E_COST_CAP:
        raise DomainError(
            f"sweep grid reaches e = {grid[-1]!r}; the cost error must stay below {E_COST_CAP}"
        )
    rows = []
    for e in grid:
        config = SimulationConfig(
            e_benefit=e,
            e_cost=e,
            cost=100.0,
            benefit_cost_ratio=ratio,
            iterations=iterations,
            seed=seed,
        )
        result = run_simulation(config, workers=workers, chunk_size=chunk_size)
        rows.append(SweepRow(e, result.mean_abs_error, ratio, iterations, seed))
    return rows


def convergence_study(
    config: SimulationConfig,
    n_list: tuple[int, ...] = DEFAULT_CONVERGENCE_N,
    seed_count: int = DEFAULT_CONVERGENCE_SEEDS,
    *,
    workers: int = 1,
    chunk_size: int = 65_536,
) -> list[ConvergenceRow]:
    """How the error statistic settles as the iteration count grows.

    For each run length the study repeats the simulation under seed_count
    distinct seeds (config.seed, config.seed + 1, ...) and reports the
    across-seed spread (max - min) and mean of mean_abs_error.  A statistic
    that has converged at some N shows a spread near zero there.
    """
    n_values = list(n_list)
    if not n_values:
        raise DomainError("n_list must not be empty")
    for n in n_values:
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise DomainError(f"run lengths must be positive integers, got {n!r}")
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise DomainError(f"n_list must be strictly ascending, got {n_values!r}")
    if not isinstance(seed_count, int) or seed_count < 2:
        raise DomainError(f"seed_count must be at least 2 for a spread, got {seed_count!r}")

    rows = []
    for n in n_values:
        deltas = []
        for j in range(seed_count):
            run_config = replace(config, iterations=int(n), seed=spawned_seed(config.seed, j))
            deltas.append(run_simulation(run_config, workers=workers, chunk_size=chunk_size).mean_abs_error)
        rows.append(
            ConvergenceRow(
                n=int(n),
                spread=max(deltas) - min(deltas),
                mean_delta_r=math.fsum(deltas) / seed_count,
            )
        )
    return rows


def compare_with_analytic(result: SimulationResult) -> AnalyticComparison:
    """Set the run's measured error next to the propagated error measures.

    The reported bounds are the exact worst-case interval from the case's
    benefit and cost estimates.  The containment flag is evaluated against
    the same expression the sampler computes (ratio * (1 +/- e_b) / (1 -/+
    e_c) - 1), so it is exact even for zero-width intervals where the
    money-space bounds can sit an ulp away from the draws.
    """
    config = result.config
    benefit = Estimate(result.benefit_actual, result.benefit_actual * config.e_benefit)
    cost = Estimate(result.cost_actual, result.cost_actual * config.e_cost)
    max_err = max_probable_error(benefit, cost)
    prob_err = probable_error(benefit, cost)
    lower, upper = exact_worst_case_bounds(benefit, cost)
    ratio = config.benefit_cost_ratio
    draw_floor = ratio * (1.0 - config.e_benefit) / (1.0 + config.e_cost) - 1.0
    draw_ceiling = ratio * (1.0 + config.e_benefit) / (1.0 - config.e_cost) - 1.0
    contained = draw_floor <= result.draw_stats.min and result.draw_stats.max <= draw_ceiling
    return AnalyticComparison(
        max_probable_error=max_err,
        probable_error=prob_err,
        roi_lower=lower,
        roi_upper=upper,
        mc_mean_abs_error=result.mean_abs_error,
        draws_contained=contained,
        probable_le_max=prob_err <= max_err,
    )
