"""Configuration sets of fractal measures: maps, measures, densities and diagnostics."""

__version__ = "0.1.0"
