"""Parameter sweeps and their CSV/JSON serialization.

Both output formats render every number through the same 17-significant-
digit formatter, so the decimal strings in a CSV and a JSON emission of
the same sweep are identical and round-trip to the same doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .copier import CopyVariant, InputQubit, run_copier
from .separability import ppt_verdict

__all__ = [
    "CSV_COLUMNS",
    "METRICS",
    "SCHEMA_VERSION",
    "GridSpec",
    "SweepSpec",
    "sweep_rows",
    "sweep_document",
    "render_csv",
    "render_json",
    "format_float",
]

SCHEMA_VERSION = "1"

CSV_COLUMNS = [
    "theta",
    "phi",
    "variant",
    "d1_a1",
    "d1_a2",
    "d1_a3",
    "d2_a2a3",
    "d2_a1a2",
    "d2_a1a3",
    "d3",
    "s_a2",
    "fid_a2",
    "E_a2a3",
]

METRICS = frozenset({"d1", "d2", "d3", "s", "fidelity", "E"})

_METRIC_COLUMNS = {
    "d1": ("d1_a1", "d1_a2", "d1_a3"),
    "d2": ("d2_a2a3", "d2_a1a2", "d2_a1a3"),
    "d3": ("d3",),
    "s": ("s_a2",),
    "fidelity": ("fid_a2",),
    "E": ("E_a2a3",),
}


@dataclass(frozen=True)
class GridSpec:
    """An inclusive linear grid of angles in radians."""

    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("grid count must be at least 1")
        for edge in (self.start, self.stop):
            if not 0.0 <= edge <= 2.0 * math.pi + 1e-12:
                raise ValueError(f"grid edge {edge!r} outside [0, 2*pi]")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """A (theta, phi) product grid plus the metrics to evaluate on it."""

    variant: CopyVariant
    theta_grid: GridSpec
    phi_grid: GridSpec
    metrics: frozenset = METRICS

    def __post_init__(self) -> None:
        unknown = set(self.metrics) - METRICS
        if unknown:
            raise ValueError(f"unknown metrics: {sorted(unknown)}")
        object.__setattr__(self, "metrics", frozenset(self.metrics))


def sweep_rows(spec: SweepSpec) -> list[dict]:
    """Evaluate the sweep, one row dict per grid point, theta-major order.

    Every CSV column is present in every row; deselected metrics and
    inapplicable values (duplicator d3, absent scaling fits) are None.
    """
    rows = []
    for theta in spec.theta_grid.values():
        for phi in spec.phi_grid.values():
            qubit = InputQubit(float(theta), float(phi))
            report = run_copier(qubit, spec.variant)
            row: dict = {column: None for column in CSV_COLUMNS}
            row["theta"] = float(theta)
            row["phi"] = float(phi)
            row["variant"] = spec.variant.value
            if "d1" in spec.metrics:
                for label in ("a1", "a2", "a3"):
                    row[f"d1_{label}"] = report.d1[label]
            if "d2" in spec.metrics:
                for label in ("a2a3", "a1a2", "a1a3"):
                    row[f"d2_{label}"] = report.d2[label]
            if "d3" in spec.metrics:
                row["d3"] = report.d3
            if "s" in spec.metrics:
                row["s_a2"] = report.scaling["a2"]
            if "fidelity" in spec.metrics:
                row["fid_a2"] = report.fidelity["a2"][0]
            if "E" in spec.metrics:
                row["E_a2a3"] = ppt_verdict(report.pair_reductions["a2a3"]).min_eigenvalue
            rows.append(row)
    return rows


def _grid_meta(grid: GridSpec) -> dict:
    return {"start": grid.start, "stop": grid.stop, "count": grid.count}


def sweep_document(spec: SweepSpec, rows: list[dict]) -> dict:
    return {
        "meta": {
            "schema_version": SCHEMA_VERSION,
            "generator": f"qcopynet {__version__}",
            "kind": "sweep",
            "variant": spec.variant.value,
            "theta_grid": _grid_meta(spec.theta_grid),
            "phi_grid": _grid_meta(spec.phi_grid),
            "metrics": sorted(spec.metrics),
            "columns": list(CSV_COLUMNS),
        },
        "rows": rows,
        "summary": {"row_count": len(rows)},
    }


def format_float(x: float) -> str:
    """Render a float with 17 significant digits (lossless for doubles)."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} in report")
    return format(float(x), ".17g")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format_float(value)


def render_csv(document: dict) -> str:
    """CSV body for a sweep document; header row first, empty cell for None."""
    lines = [",".join(CSV_COLUMNS)]
    for row in document["rows"]:
        lines.append(",".join(_cell(row[column]) for column in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def _json_value(value, indent: int) -> str:
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{pad}  "{key}": {_json_value(item, indent + 1)}' for key, item in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(f"{pad}  {_json_value(item, indent + 1)}" for item in value)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_json(document: dict) -> str:
    """JSON text with floats rendered exactly as in the CSV output."""
    return _json_value(document, 0) + "\n"
