"""Rendering of analysis results as aligned text tables, CSV, or JSON.

Every result is first turned into one or more sections (a titled grid of
labelled rows), then the chosen writer serializes the sections.  Numbers
are written with 12 significant digits in every format, and the JSON
writer re-parses that rendering so the three formats carry identical
values.  Undefined entries appear as "n/a" in tables, empty cells in CSV,
and null in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CitationDataError
from .matrix import JournalSet
from .metrics import (
    NormalizedMatrix,
    PowerWeaknessResult,
    SelfCitationDiagnostics,
    WeightVector,
)
from .sensitivity import LinearFit, SensitivityReport

FORMATS = ("table", "csv", "json")

Cell = str | int | float


@dataclass(frozen=True, eq=False)
class LabeledMatrix:
    """Plain matrix with journal labels, for rendering power results."""

    journals: JournalSet
    values: np.ndarray
    title: str
    key: str = "matrix"


@dataclass(frozen=True, eq=False)
class FitReport:
    """Paired per-journal values together with their fitted line."""

    journals: JournalSet
    x: np.ndarray
    y: np.ndarray
    x_name: str
    y_name: str
    fit: LinearFit


@dataclass(frozen=True)
class Section:
    """One titled grid: a header row, labelled data rows, and optional
    table-only footer lines.  The first column holds the row key."""

    key: str
    title: str
    header: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    footer: tuple[str, ...] = ()


def format_number(value: float) -> str:
    """Canonical 12-significant-digit rendering shared by all writers."""
    return f"{value:.12g}"


def _cell_text(value: Cell, undefined: str) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if math.isnan(value):
        return undefined
    return format_number(float(value))


def _cell_json(value: Cell):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    if math.isnan(value):
        return None
    return float(format_number(float(value)))


def weights_section(key: str, title: str, weights: WeightVector, value_name: str = "weight") -> Section:
    rows = tuple(
        (label, float(value))
        for label, value in zip(weights.journals.labels, weights.values)
    )
    return Section(key, title, ("journal", value_name), rows)


def matrix_section(key: str, title: str, journals: JournalSet, values: np.ndarray) -> Section:
    labels = journals.labels
    rows = tuple(
        (labels[i], *(float(v) for v in values[i])) for i in range(len(labels))
    )
    return Section(key, title, ("journal", *labels), rows)


def build_sections(result) -> tuple[Section, ...]:
    """Map a result object to its report sections."""
    if isinstance(result, WeightVector):
        return (weights_section("weights", "Journal weights", result),)
    if isinstance(result, NormalizedMatrix):
        return (
            matrix_section(
                "normalized",
                "Normalized citation matrix (citations received per reference given)",
                result.journals,
                result.values,
            ),
        )
    if isinstance(result, LabeledMatrix):
        return (matrix_section(result.key, result.title, result.journals, result.values),)
    if isinstance(result, PowerWeaknessResult):
        rows = tuple(
            (label, float(p), float(w), float(r))
            for label, p, w, r in zip(
                result.power.journals.labels,
                result.power.values,
                result.weakness.values,
                result.ratio.values,
            )
        )
        return (
            Section(
                "pwr",
                f"Power-weakness ratios after {result.cycles} cycles",
                ("journal", "power", "weakness", "ratio"),
                rows,
            ),
        )
    if isinstance(result, SelfCitationDiagnostics):
        rows = tuple(
            (
                label,
                float(result.self_citations[i]),
                float(result.cited_by_others[i]),
                float(result.citing_others[i]),
                float(result.self_cited_rate[i]),
                float(result.self_citing_rate[i]),
                float(result.cited_citing_ratio_with[i]),
                float(result.cited_citing_ratio_without[i]),
            )
            for i, label in enumerate(result.journals.labels)
        )
        return (
            Section(
                "diagnostics",
                "Self-citation diagnostics",
                (
                    "journal",
                    "self_citations",
                    "cited_by_others",
                    "citing_others",
                    "self_cited_rate",
                    "self_citing_rate",
                    "cited_citing_ratio_with",
                    "cited_citing_ratio_without",
                ),
                rows,
            ),
        )
    if isinstance(result, SensitivityReport):
        rows = tuple(
            (label, float(result.with_values[i]), float(result.without_values[i]), float(result.pct_change[i]))
            for i, label in enumerate(result.journals.labels)
        )
        footer = (
            f"max |pct_change|:  {_cell_text(result.max_abs_pct_change, 'n/a')}",
            f"mean |pct_change|: {_cell_text(result.mean_abs_pct_change, 'n/a')}",
        )
        return (
            Section(
                "sensitivity",
                f"Self-citation sensitivity of {result.indicator}",
                ("journal", "with", "without", "pct_change"),
                rows,
                footer,
            ),
        )
    if isinstance(result, FitReport):
        points = tuple(
            (label, float(result.x[i]), float(result.y[i]))
            for i, label in enumerate(result.journals.labels)
        )
        stats: tuple[tuple[Cell, ...], ...] = (
            ("slope", result.fit.slope),
            ("intercept", result.fit.intercept),
            ("pearson_r", result.fit.pearson_r),
            ("n_points", result.fit.n_points),
        )
        return (
            Section(
                "points",
                f"Fitted pairs ({result.y_name} against {result.x_name})",
                ("journal", result.x_name, result.y_name),
                points,
            ),
            Section("statistics", "Least-squares line", ("statistic", "value"), stats),
        )
    raise CitationDataError(f"no report layout for {type(result).__name__}")


def _render_table(sections: Sequence[Section]) -> str:
    blocks: list[str] = []
    for sec in sections:
        grid = [list(sec.header)] + [
            [_cell_text(cell, "n/a") for cell in row] for row in sec.rows
        ]
        widths = [max(len(r[c]) for r in grid) for c in range(len(sec.header))]
        lines = [sec.title, "-" * len(sec.title)]
        for r, row in enumerate(grid):
            padded = [
                row[0].ljust(widths[0]),
                *(cell.rjust(widths[c + 1]) for c, cell in enumerate(row[1:])),
            ]
            lines.append("  ".join(padded).rstrip())
        lines.extend(sec.footer)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _render_csv(sections: Sequence[Section]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for index, sec in enumerate(sections):
        if len(sections) > 1:
            if index:
                out.write("\n")
            out.write(f"# {sec.key}\n")
        writer.writerow(sec.header)
        for row in sec.rows:
            writer.writerow([_cell_text(cell, "") for cell in row])
    return out.getvalue()


def _section_json(sec: Section):
    mapping = {}
    for row in sec.rows:
        row_key = str(row[0])
        if len(sec.header) == 2:
            mapping[row_key] = _cell_json(row[1])
        else:
            mapping[row_key] = {
                name: _cell_json(cell) for name, cell in zip(sec.header[1:], row[1:])
            }
    return mapping


def _render_json(sections: Sequence[Section], meta: dict | None) -> str:
    if len(sections) == 1:
        payload = _section_json(sections[0])
    else:
        payload = {sec.key: _section_json(sec) for sec in sections}
    if meta is not None:
        payload = {**payload, "meta": meta}
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def render_sections(sections: Sequence[Section], fmt: str, meta: dict | None = None) -> str:
    """Serialize prepared sections in the requested format."""
    if fmt == "table":
        return _render_table(sections)
    if fmt == "csv":
        return _render_csv(sections)
    if fmt == "json":
        return _render_json(sections, meta)
    raise CitationDataError(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")


def render_report(result, fmt: str = "table", meta: dict | None = None) -> str:
    """Render one result object; see :func:`build_sections` for types."""
    return render_sections(build_sections(result), fmt, meta)
