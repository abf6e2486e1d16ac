"""Turn a results CSV into a line plot, one series per algorithm.

The renderer is a pure function of the CSV and the :class:`PlotSpec`: no
aggregation or numeric transformation happens here beyond axis scaling, and
missing means (censored cells) become gaps in the line rather than zeros.
Colors and markers are assigned by sorted series name so the same CSV always
renders the same way.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

# fixed salt so SVG element ids do not change between runs
matplotlib.rcParams["svg.hashsalt"] = "slsplot"

_MARKERS = ("o", "s", "^", "D", "v", "P", "X", "*", "<", ">")
_COLORS = plt.get_cmap("tab10").colors


class PlotError(ValueError):
    """Unusable CSV or plot specification."""


@dataclass(frozen=True)
class PlotSpec:
    """What to plot and where to write it.

    Parameters
    ----------
    input_csv : path to the harness CSV export.
    x_column, series_column : column names; one line per distinct series value.
    y_column : plotted value, defaults to ``mean_iterations``.
    y_err_column : optional column rendered as error bars.
    log_y : log-scale the y axis (runtimes span orders of magnitude).
    output : image path; format follows the ``.png``/``.svg`` suffix.
    """

    input_csv: str | Path
    x_column: str
    series_column: str
    output: str | Path
    y_column: str = "mean_iterations"
    y_err_column: str | None = None
    log_y: bool = True
    title: str | None = None

    def __post_init__(self):
        suffix = Path(self.output).suffix.lower().lstrip(".")
        if suffix not in ("png", "svg"):
            raise PlotError(f"unsupported image format {suffix!r} (png or svg)")
        object.__setattr__(self, "_format", suffix)

    @property
    def format(self) -> str:
        return self._format


@dataclass
class Series:
    name: str
    x: list = field(default_factory=list)
    y: list = field(default_factory=list)  # math.nan marks a censored gap
    y_err: list = field(default_factory=list)

    @property
    def has_gaps(self) -> bool:
        return any(math.isnan(v) for v in self.y)


def _as_number(text: str):
    try:
        return float(text)
    except ValueError:
        return text  # categorical x values are allowed


def load_table(spec: PlotSpec) -> list[Series]:
    """Parse the CSV into one :class:`Series` per series-column value."""
    with open(spec.input_csv, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        needed = [spec.x_column, spec.series_column, spec.y_column]
        if spec.y_err_column:
            needed.append(spec.y_err_column)
        for column in needed:
            if column not in header:
                raise PlotError(f"column {column!r} not in CSV header {header}")
        rows = list(reader)
    if not rows:
        raise PlotError(f"no data rows in {spec.input_csv}")
    table: dict[str, Series] = {}
    for row in rows:
        series = table.setdefault(row[spec.series_column], Series(row[spec.series_column]))
        series.x.append(_as_number(row[spec.x_column]))
        y_text = row[spec.y_column]
        series.y.append(float(y_text) if y_text else math.nan)
        if spec.y_err_column:
            err_text = row[spec.y_err_column]
            series.y_err.append(float(err_text) if err_text else math.nan)
    return [table[name] for name in sorted(table)]


def render(spec: PlotSpec) -> Path:
    """Write the plot image and return its path."""
    table = load_table(spec)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for idx, series in enumerate(table):
        label = series.name + (" [censored cells]" if series.has_gaps else "")
        color = _COLORS[idx % len(_COLORS)]
        marker = _MARKERS[idx % len(_MARKERS)]
        if spec.y_err_column:
            ax.errorbar(
                series.x,
                series.y,
                yerr=series.y_err,
                label=label,
                color=color,
                marker=marker,
                capsize=3,
            )
        else:
            ax.plot(series.x, series.y, label=label, color=color, marker=marker)
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel(spec.x_column)
    ax.set_ylabel(spec.y_column)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(fontsize="small")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    out = Path(spec.output)
    # a fixed Date keeps SVG output byte-identical between runs
    fig.savefig(out, format=spec.format, metadata={"Date": None} if spec.format == "svg" else None)
    plt.close(fig)
    return out
