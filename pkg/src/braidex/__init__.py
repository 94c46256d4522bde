"""Braid indices of two-bridge and alternating Montesinos links.

Closed formulas read off standard oriented diagrams, checked against the
Morton-Franks-Williams bound computed from an exact HOMFLY engine.
"""

from __future__ import annotations

from .diagram import Crossing, DiagramError, OrientedDiagram, seifert_decompose, writhe
from .homfly import SkeinEngine, homfly, mwf_lower_bound
from .montesinos import MontesinosPresentation, analyze_montesinos, braid_index_montesinos
from .polynomial import Laurent2, a_extremes
from .rational import Fraction, analyze_rational, braid_index_rational, odd_continued_fraction
from .reduction import reduction_montesinos, reduction_rational, verify_base_equations

__version__ = "0.1.0"

__all__ = [
    "Crossing",
    "DiagramError",
    "OrientedDiagram",
    "seifert_decompose",
    "writhe",
    "SkeinEngine",
    "homfly",
    "mwf_lower_bound",
    "MontesinosPresentation",
    "analyze_montesinos",
    "braid_index_montesinos",
    "Laurent2",
    "a_extremes",
    "Fraction",
    "analyze_rational",
    "braid_index_rational",
    "odd_continued_fraction",
    "reduction_montesinos",
    "reduction_rational",
    "verify_base_equations",
]
