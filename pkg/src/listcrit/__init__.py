"""Exact checks for list-critical graphs: choosability, paintability,
criticality, Gallai trees, and the average-degree bound chain."""

__version__ = "0.1.0"
