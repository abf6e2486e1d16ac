"""Render experiment CSVs into publication-style runtime plots."""

from .plot import PlotError, PlotSpec, load_table, render

__all__ = ["PlotError", "PlotSpec", "load_table", "render"]
__version__ = "0.1.0"
