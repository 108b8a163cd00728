"""Render performance-profile and trade-off figures from dyncover CSVs."""

from dyncover_plots.render import render_profiles, render_tradeoff

__version__ = "0.1.0"
