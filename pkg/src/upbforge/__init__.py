"""Unextendible product bases from orthogonality graphs.

Exact verification of (genuinely) unextendible product bases, closed-form
size bounds, orthogonal-representation search and the graph-decomposition
construction route.
"""

from .bounds import (
    bennett_bound,
    compare,
    demianowicz_bound,
    improved_bound,
    new_bound,
    nn_bound,
    trivial_gupb_bound,
)
from .graphs import Graph, cayley_z13, complete, enumerate_k13_decompositions, union
from .linalg import QComplex, Vector, inner_product, orthocomplement_basis, rank, tensor, vec
from .orthrep import SolverConfig, solve, solve_with_genericity
from .product import (
    Bipartition,
    ProductStateSet,
    check_minimal_gupb_regularity,
    check_qutrit_gupb_conditions,
    degree_bounds_check,
    group,
    is_gupb,
    is_upb,
    maximal_unsaturated_sets,
    mutual_orthogonality,
    orthogonality_graph,
)

__all__ = [
    "Bipartition",
    "Graph",
    "ProductStateSet",
    "QComplex",
    "SolverConfig",
    "Vector",
    "bennett_bound",
    "cayley_z13",
    "check_minimal_gupb_regularity",
    "check_qutrit_gupb_conditions",
    "compare",
    "complete",
    "degree_bounds_check",
    "demianowicz_bound",
    "enumerate_k13_decompositions",
    "group",
    "improved_bound",
    "inner_product",
    "is_gupb",
    "is_upb",
    "maximal_unsaturated_sets",
    "mutual_orthogonality",
    "new_bound",
    "nn_bound",
    "orthocomplement_basis",
    "orthogonality_graph",
    "rank",
    "solve",
    "solve_with_genericity",
    "tensor",
    "trivial_gupb_bound",
    "union",
    "vec",
]

__version__ = "0.1.0"
