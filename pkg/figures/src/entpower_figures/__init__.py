"""Rendering of entpower experiment outputs into publication-style figures."""

from .render import FigureSpec, SchemaError, load_curve_csv, load_manifest, render

__version__ = "0.1.0"
