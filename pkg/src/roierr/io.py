"""Scenario documents and deterministic result serialization.

Scenario wire format: a JSON object

    {
      "name": "CRM rollout",
      "currency_label": "kUSD",                  // optional, display only
      "benefits": [
        {"label": "savings", "amount": 200.0, "relative_error": 0.10}
      ],
      "costs": [
        {"label": "licenses", "amount": 100.0, "absolute_error": 10.0}
      ]
    }

Each item carries exactly one error form, absolute or relative; parsing
normalizes to absolute.  Validation failures point at the offending field
(`costs[0].amount: ...`), syntax failures at the line and column.

Serialization (emit) renders every result type as CSV or JSON with floats in
repr form, which round-trips them exactly (17 significant digits at most,
never fewer than the value needs).  Output is byte-deterministic: the same
object always serializes to the same text.  The --percent display mode
multiplies fraction-valued fields (ROI, error measures, relative errors) by
100 at this edge only; money, ratios and counts are never scaled.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path

from .core import DomainError, Estimate, LineItem, Scenario
from .propagation import ErrorReport, ValidityRow
from .simulation import (
    AnalyticComparison,
    ConvergenceRow,
    SimulationResult,
    SweepRow,
)


class ScenarioFormatError(ValueError):
    """A scenario document failed to parse or validate."""


_ITEM_FIELDS = {"label", "amount", "absolute_error", "relative_error"}
_TOP_FIELDS = {"name", "currency_label", "benefits", "costs"}


def _fail(path: str, message: str) -> None:
    raise ScenarioFormatError(f"{path}: {message}")


def _number(value, path: str, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{path}.{field}", "must be a number")
    if not math.isfinite(value):
        _fail(f"{path}.{field}", "must be finite")
    return float(value)


def _parse_items(raw, path: str) -> tuple[LineItem, ...]:
    if not isinstance(raw, list):
        _fail(path, "must be a list")
    items = []
    for i, entry in enumerate(raw):
        where = f"{path}[{i}]"
        if not isinstance(entry, dict):
            _fail(where, "must be an object")
        unknown = set(entry) - _ITEM_FIELDS
        if unknown:
            _fail(where, f"unknown fields: {', '.join(sorted(unknown))}")
        label = entry.get("label")
        if not isinstance(label, str) or not label:
            _fail(f"{where}.label", "must be a non-empty string")
        if "amount" not in entry:
            _fail(f"{where}.amount", "is required")
        amount = _number(entry["amount"], where, "amount")
        if amount < 0:
            _fail(f"{where}.amount", "must be non-negative")
        has_abs = "absolute_error" in entry
        has_rel = "relative_error" in entry
        if has_abs == has_rel:
            _fail(where, "give exactly one of absolute_error or relative_error")
        try:
            if has_abs:
                err = _number(entry["absolute_error"], where, "absolute_error")
                if err < 0:
                    _fail(f"{where}.absolute_error", "must be non-negative")
                estimate = Estimate(amount, err)
            else:
                rel = _number(entry["relative_error"], where, "relative_error")
                if rel < 0:
                    _fail(f"{where}.relative_error", "must be non-negative")
                estimate = Estimate.from_relative(amount, rel)
        except DomainError as exc:
            _fail(where, str(exc))
        items.append(LineItem(label=label, estimate=estimate))
    return tuple(items)


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario document, or raise ScenarioFormatError saying where."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        _fail("$", "top level must be an object")
    unknown = set(raw) - _TOP_FIELDS
    if unknown:
        _fail("$", f"unknown fields: {', '.join(sorted(unknown))}")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        _fail("name", "must be a non-empty string")
    currency = raw.get("currency_label")
    if currency is not None and not isinstance(currency, str):
        _fail("currency_label", "must be a string")
    for key in ("benefits", "costs"):
        if key not in raw:
            _fail(key, "is required (may be an empty list for benefits)")
    benefits = _parse_items(raw["benefits"], "benefits")
    costs = _parse_items(raw["costs"], "costs")
    try:
        return Scenario(name=name, benefits=benefits, costs=costs)
    except DomainError as exc:
        raise ScenarioFormatError(f"costs: {exc}") from exc


def load_scenario(path: str | Path) -> Scenario:
    """Read and parse a scenario file."""
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def scenario_to_document(scenario: Scenario, currency_label: str | None = None) -> str:
    """Serialize a Scenario back to its wire format, errors normalized to absolute."""
    doc: dict = {"name": scenario.name}
    if currency_label is not None:
        doc["currency_label"] = currency_label
    doc["benefits"] = [
        {"label": it.label, "amount": it.estimate.value, "absolute_error": it.estimate.abs_error}
        for it in scenario.benefits
    ]
    doc["costs"] = [
        {"label": it.label, "amount": it.estimate.value, "absolute_error": it.estimate.abs_error}
        for it in scenario.costs
    ]
    return json.dumps(doc, indent=2) + "\n"


# Serialization field kinds: "fraction" values respond to percent display,
# everything else is emitted as-is.
_FRACTION = "fraction"
_PLAIN = "plain"


def _scaled(value, kind: str, percent: bool):
    if value is None:
        return None
    if kind == _FRACTION and percent:
        return value * 100.0
    return value


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _report_fields(report: ErrorReport) -> list[tuple[str, object, str]]:
    return [
        ("roi", report.roi, _FRACTION),
        ("max_probable_error", report.max_probable_error, _FRACTION),
        ("probable_error", report.probable_error, _FRACTION),
        ("roi_lower", report.roi_lower, _FRACTION),
        ("roi_upper", report.roi_upper, _FRACTION),
        ("relative_max_error", report.relative_max_error, _FRACTION),
        ("benefit_total", report.benefit_total.value, _PLAIN),
        ("benefit_abs_error", report.benefit_total.abs_error, _PLAIN),
        ("cost_total", report.cost_total.value, _PLAIN),
        ("cost_abs_error", report.cost_total.abs_error, _PLAIN),
        ("aggregation_mode", report.aggregation_mode, _PLAIN),
    ]


def _case_source(result: SimulationResult) -> str:
    if result.config.band is not None:
        return f"band:{result.config.band.name.lower()}"
    return "explicit"


def _result_fields(result: SimulationResult) -> list[tuple[str, object, str]]:
    stats = result.draw_stats
    return [
        ("actual_roi", result.actual_roi, _FRACTION),
        ("mean_abs_error", result.mean_abs_error, _FRACTION),
        ("iterations", result.iterations, _PLAIN),
        ("seed", result.seed, _PLAIN),
        ("cost_actual", result.cost_actual, _PLAIN),
        ("benefit_actual", result.benefit_actual, _PLAIN),
        ("benefit_cost_ratio", result.config.benefit_cost_ratio, _PLAIN),
        ("e_benefit", result.config.e_benefit, _FRACTION),
        ("e_cost", result.config.e_cost, _FRACTION),
        ("case_source", _case_source(result), _PLAIN),
        ("draw_mean", stats.mean, _FRACTION),
        ("draw_std", stats.std, _FRACTION),
        ("draw_min", stats.min, _FRACTION),
        ("draw_max", stats.max, _FRACTION),
        ("draw_p5", stats.p5, _FRACTION),
        ("draw_p50", stats.p50, _FRACTION),
        ("draw_p95", stats.p95, _FRACTION),
    ]


def _comparison_fields(cmp: AnalyticComparison) -> list[tuple[str, object, str]]:
    return [
        ("max_probable_error", cmp.max_probable_error, _FRACTION),
        ("probable_error", cmp.probable_error, _FRACTION),
        ("roi_lower", cmp.roi_lower, _FRACTION),
        ("roi_upper", cmp.roi_upper, _FRACTION),
        ("mc_mean_abs_error", cmp.mc_mean_abs_error, _FRACTION),
        ("draws_contained", cmp.draws_contained, _PLAIN),
        ("probable_le_max", cmp.probable_le_max, _PLAIN),
    ]


_SWEEP_COLUMNS = (
    ("e", _FRACTION),
    ("delta_r", _FRACTION),
    ("ratio", _PLAIN),
    ("iterations", _PLAIN),
    ("seed", _PLAIN),
)
_VALIDITY_COLUMNS = (
    ("rel_error", _FRACTION),
    ("exact", _PLAIN),
    ("approx", _PLAIN),
    ("relative_gap", _FRACTION),
)
_CONVERGENCE_COLUMNS = (
    ("n", _PLAIN),
    ("spread", _FRACTION),
    ("mean_delta_r", _FRACTION),
)


def _table_fields(row) -> tuple[tuple[str, str], ...]:
    if isinstance(row, SweepRow):
        return _SWEEP_COLUMNS
    if isinstance(row, ValidityRow):
        return _VALIDITY_COLUMNS
    if isinstance(row, ConvergenceRow):
        return _CONVERGENCE_COLUMNS
    raise TypeError(f"cannot serialize rows of type {type(row).__name__}")


def _emit_csv(header: list[str], rows: list[list[object]]) -> str:
    buffer = _io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


def _emit_fields(fields: list[tuple[str, object, str]], fmt: str, percent: bool) -> str:
    if fmt == "csv":
        header = [name for name, _, _ in fields]
        row = [_scaled(value, kind, percent) for _, value, kind in fields]
        return _emit_csv(header, [row])
    doc = {name: _scaled(value, kind, percent) for name, value, kind in fields}
    return json.dumps(doc, indent=2) + "\n"


def _check_format(fmt: str) -> str:
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}, expected 'csv' or 'json'")
    return fmt


def emit(obj, fmt: str = "csv", *, percent: bool = False) -> str:
    """Serialize a result object to CSV or JSON text.

    Accepts an ErrorReport, a SimulationResult, an AnalyticComparison, a
    Scenario (JSON only), or a non-empty list of SweepRow / ValidityRow /
    ConvergenceRow.  Tables use the fixed column contracts
    e,delta_r,ratio,iterations,seed / rel_error,exact,approx,relative_gap /
    n,spread,mean_delta_r.
    """
    fmt = _check_format(fmt)
    if isinstance(obj, ErrorReport):
        return _emit_fields(_report_fields(obj), fmt, percent)
    if isinstance(obj, SimulationResult):
        return _emit_fields(_result_fields(obj), fmt, percent)
    if isinstance(obj, AnalyticComparison):
        return _emit_fields(_comparison_fields(obj), fmt, percent)
    if isinstance(obj, Scenario):
        if fmt != "json":
            raise ValueError("scenarios serialize to JSON only")
        return scenario_to_document(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            raise ValueError("cannot serialize an empty table")
        columns = _table_fields(obj[0])
        names = [name for name, _ in columns]
        valued = [
            [_scaled(getattr(row, name), kind, percent) for name, kind in columns]
            for row in obj
        ]
        if fmt == "csv":
            return _emit_csv(names, valued)
        docs = [dict(zip(names, values)) for values in valued]
        return json.dumps(docs, indent=2) + "\n"
    raise TypeError(f"cannot serialize objects of type {type(obj).__name__}")


def emit_simulation(
    result: SimulationResult,
    comparison: AnalyticComparison,
    fmt: str = "json",
    *,
    percent: bool = False,
) -> str:
    """Serialize a simulation run together with its analytic comparison."""
    fmt = _check_format(fmt)
    if fmt == "csv":
        fields = _result_fields(result) + [
            (f"analytic_{name}", value, kind)
            for name, value, kind in _comparison_fields(comparison)
        ]
        return _emit_fields(fields, "csv", percent)
    doc = {
        "result": {
            name: _scaled(value, kind, percent)
            for name, value, kind in _result_fields(result)
        },
        "analytic": {
            name: _scaled(value, kind, percent)
            for name, value, kind in _comparison_fields(comparison)
        },
    }
    return json.dumps(doc, indent=2) + "\n"
