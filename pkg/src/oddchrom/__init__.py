"""Odd colorings of embedded graphs: exact search, reducible configurations and discharging audits."""

from .coloring import Coloring, OddCertificate, odd_color_set, recolor_two_neighbor, verify_odd_coloring
from .graph import AbstractGraph, EmbeddedGraph, FaceSet, euler_genus, trace_faces
from .solver import SolveResult, brute_force_chi_odd, exact_chi_odd, extend_partial

__all__ = [
    "AbstractGraph",
    "Coloring",
    "EmbeddedGraph",
    "FaceSet",
    "OddCertificate",
    "SolveResult",
    "brute_force_chi_odd",
    "euler_genus",
    "exact_chi_odd",
    "extend_partial",
    "odd_color_set",
    "recolor_two_neighbor",
    "trace_faces",
    "verify_odd_coloring",
]
__version__ = "0.1.0"
