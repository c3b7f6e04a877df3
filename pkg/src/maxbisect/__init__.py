"""Guaranteed-weight bisections of bounded-degree graphs with exact arithmetic."""

from .dispatch import solve
from .families import BalancedBlock, BalancedFamily, Bisection, round_to_bisection, validate_family
from .generators import generate
from .graph import WeightedMultigraph, format_graph, parse_graph, read_graph, write_graph
from .matching import max_weight_matching, vizing_color
from .oracle import audit_gadget, exact_max_bisection, exact_max_cut, verify_bisection
from .report import SolverReport
from .subcubic import bisect_via_chromatic_index, solve_subcubic
from .trianglefree import THETA, solve_bridgeless_tf, solve_triangle_free

__all__ = [
    "BalancedBlock",
    "BalancedFamily",
    "Bisection",
    "SolverReport",
    "THETA",
    "WeightedMultigraph",
    "audit_gadget",
    "bisect_via_chromatic_index",
    "exact_max_bisection",
    "exact_max_cut",
    "format_graph",
    "generate",
    "max_weight_matching",
    "parse_graph",
    "read_graph",
    "round_to_bisection",
    "solve",
    "solve_bridgeless_tf",
    "solve_subcubic",
    "solve_triangle_free",
    "validate_family",
    "verify_bisection",
    "vizing_color",
    "write_graph",
]
