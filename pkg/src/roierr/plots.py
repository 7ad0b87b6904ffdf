"""Figure rendering for the report-producing commands.

Each function writes one PNG next to the delimited output and returns the
path.  Rendering is additive: nothing here feeds back into the numbers.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .propagation import ValidityRow
from .simulation import ConvergenceRow, SimulationResult, SweepRow


def _finish(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_sweep_figure(rows: list[SweepRow], path: str | Path) -> Path:
    """Mean absolute ROI error against the relative input error."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot([r.e for r in rows], [r.delta_r for r in rows], marker="o", lw=1.5)
    ax.set_xlabel("relative error of benefit and cost estimates")
    ax.set_ylabel("mean absolute ROI error")
    ax.set_title(f"ROI error vs input error (ratio {rows[0].ratio}, N={rows[0].iterations})")
    ax.grid(alpha=0.3)
    return _finish(fig, Path(path))


def save_validity_figure(rows: list[ValidityRow], path: str | Path) -> Path:
    """Exact quotient factor against its first-order approximation."""
    x = [r.rel_error for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(x, [r.exact for r in rows], marker="o", lw=1.5, label="exact 1/(1-x)")
    ax.plot(x, [r.approx for r in rows], marker="s", lw=1.5, label="first order 1+x")
    ax.set_xlabel("relative error x")
    ax.set_ylabel("cost correction factor")
    ax.set_title("Where the first-order error forms stop being trustworthy")
    ax.legend()
    ax.grid(alpha=0.3)
    return _finish(fig, Path(path))


def save_convergence_figure(rows: list[ConvergenceRow], path: str | Path) -> Path:
    """Across-seed spread of the error statistic as run length grows."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot([r.n for r in rows], [r.spread for r in rows], marker="o", lw=1.5)
    ax.set_xscale("log")
    ax.set_xlabel("iterations")
    ax.set_ylabel("across-seed spread of mean absolute ROI error")
    ax.set_title("Convergence of the error statistic")
    ax.grid(alpha=0.3, which="both")
    return _finish(fig, Path(path))


def save_draws_figure(result: SimulationResult, path: str | Path) -> Path:
    """Histogram of estimated ROI draws with the true ROI marked."""
    if result.draws is None:
        raise ValueError("result carries no draws; run the simulation with keep_draws")
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.hist([d.roi_est for d in result.draws], bins=80, color="#4878cf", alpha=0.85)
    ax.axvline(result.actual_roi, color="black", lw=1.5, label="actual ROI")
    ax.set_xlabel("estimated ROI")
    ax.set_ylabel("draws")
    ax.set_title(
        f"ROI estimates under e_b={result.config.e_benefit}, "
        f"e_c={result.config.e_cost} (N={result.iterations})"
    )
    ax.legend()
    ax.grid(alpha=0.3)
    return _finish(fig, Path(path))
