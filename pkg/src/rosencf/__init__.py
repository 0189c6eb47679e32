"""Exact Rosen continued fractions as paths in the Farey graphs of Hecke
groups: field arithmetic in Q(2cos(pi/q)), the group action on the boundary,
the graph machinery (faces, parents, chains), expansion algorithms with
geodesic pattern tests and rewrites, and an independent brute-force oracle.
"""

from .algebraic import INFINITY, FieldElement, QContext, make_context, nearest_lambda_multiple
from .cf import (
    PathOfConvergents,
    RosenCF,
    build_pattern_automaton,
    convergence_estimate,
    convergents,
    enumerate_geodesic_expansions,
    evaluate,
    fibonacci,
    infinite_convergents,
    is_geodesic,
    is_geodesic_infinite_prefix,
    nearest_integer_expansion,
    parse_cf,
    path_to_cf,
    reduce_to_geodesic,
)
from .errors import RosenError
from .farey import Face, QChain, Vertex, adjacent, chain_length_D, parents, phi, q_chain
from .kernel import BACKEND as KERNEL_BACKEND
from .moebius import BoundaryPoint, GroupElement, cyclic_order, from_cf, projectively_equal

__version__ = "0.1.0"

__all__ = [
    "INFINITY", "FieldElement", "QContext", "make_context", "nearest_lambda_multiple",
    "RosenCF", "PathOfConvergents", "build_pattern_automaton", "convergence_estimate",
    "convergents", "enumerate_geodesic_expansions", "evaluate", "fibonacci",
    "infinite_convergents", "is_geodesic", "is_geodesic_infinite_prefix",
    "nearest_integer_expansion", "parse_cf", "path_to_cf", "reduce_to_geodesic",
    "Face", "QChain", "Vertex", "adjacent", "chain_length_D", "parents", "phi", "q_chain",
    "BoundaryPoint", "GroupElement", "cyclic_order", "from_cf", "projectively_equal",
    "RosenError", "KERNEL_BACKEND",
]
