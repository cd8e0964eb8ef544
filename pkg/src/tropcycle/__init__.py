"""Exact computations with tropical cycles, tropical curves and their Jacobians."""

from __future__ import annotations

from .graphcurve import Divisor, GraphPoint, MetricGraph, PLFunction, divisor_of, genus, linearly_equivalent
from .jacobian import JacPoint, PeriodData, abel_jacobi, period_matrix
from .polycx import Polyhedron, WeightedComplex, check_balanced
from .troppoly import TropPoly, hypersurface
from .tropnum import INF, trop_add, trop_mul

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Divisor",
    "GraphPoint",
    "JacPoint",
    "MetricGraph",
    "PLFunction",
    "PeriodData",
    "Polyhedron",
    "TropPoly",
    "WeightedComplex",
    "abel_jacobi",
    "check_balanced",
    "divisor_of",
    "genus",
    "hypersurface",
    "linearly_equivalent",
    "period_matrix",
    "trop_add",
    "trop_mul",
]
