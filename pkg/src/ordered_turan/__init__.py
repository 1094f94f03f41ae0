"""Relative Turán densities of ordered graphs."""

__version__ = "1.0.0"
