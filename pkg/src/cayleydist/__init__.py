"""Cayley graphs, graph automorphisms and exact distinguishing numbers.

Permutations compose right operand first: ``(p * q)[i] == p[q[i]]``.
"""

__version__ = "0.1.0"

from .budget import Budget, BudgetExceeded
from .distinguishing import (
    DistResult,
    EdgeLabeling,
    VertexLabeling,
    action_distinguishing_number,
    distinguishing_index,
    distinguishing_number,
    is_distinguishing_edge,
    is_distinguishing_vertex,
)
from .graph6 import graph6_decode, graph6_encode
from .graphs import CayleyGraph, Graph, cayley_graph, named_graph
from .groups import GroupTable, group_automorphisms, preset
from .perm import Permutation
from .permgroup import PermGroup, schreier_sims
from .symmetry import automorphism_group, is_grr, is_normal_cayley

__all__ = [
    "Budget",
    "BudgetExceeded",
    "CayleyGraph",
    "DistResult",
    "EdgeLabeling",
    "Graph",
    "GroupTable",
    "PermGroup",
    "Permutation",
    "VertexLabeling",
    "action_distinguishing_number",
    "automorphism_group",
    "cayley_graph",
    "distinguishing_index",
    "distinguishing_number",
    "graph6_decode",
    "graph6_encode",
    "group_automorphisms",
    "is_distinguishing_edge",
    "is_distinguishing_vertex",
    "is_grr",
    "is_normal_cayley",
    "named_graph",
    "preset",
    "schreier_sims",
]
