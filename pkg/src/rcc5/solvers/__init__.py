"""Decision procedures for RCC-5 networks and the dispatcher choosing between them."""
from __future__ import annotations

from ..catalog import R5_14, R5_17, R5_20, R5_28
from ..network import Network, relation_set
from ._base import InternalError, PreconditionError, SolveResult, UnionFind, Verdict
from .a9 import (RewriteError, a9_components, build_model_dag, build_model_reorient,
                 closure_rewrite_table, reorient, rewrite_closure_instance, solve_a9,
                 solve_r5_14, topological_order)
from .a20 import a20_passes, solve_a17, solve_a20
from .propagation import (build_model_atomic, path_consistency, refine_to_atomic,
                          solve_backtracking, solve_pc)

__all__ = [
    "SolveResult", "Verdict", "PreconditionError", "InternalError", "RewriteError", "UnionFind",
    "solve_a17", "solve_a20", "a20_passes", "solve_a9", "solve_r5_14", "solve_pc",
    "solve_backtracking", "path_consistency", "rewrite_closure_instance",
    "closure_rewrite_table", "build_model_dag", "build_model_reorient", "build_model_atomic",
    "reorient", "topological_order", "a9_components", "refine_to_atomic", "dispatch",
    "SOLVERS", "solve",
]

# CLI names; a9 is reachable through r514 since R_5^9 is contained in R_5^14
SOLVERS = {
    "a17": solve_a17,
    "a20": solve_a20,
    "r514": solve_r5_14,
    "pc": solve_pc,
    "bt": solve_backtracking,
}

_ROUTE = (("a17", R5_17), ("a20", R5_20), ("r514", R5_14), ("pc", R5_28))


def dispatch(net: Network) -> SolveResult:
    """Route to the cheapest procedure whose fragment covers the instance."""
    used = relation_set(net)
    for name, fragment in _ROUTE:
        if used <= fragment:
            return SOLVERS[name](net)
    return solve_backtracking(net)


def solve(net: Network, algorithm: str = "auto") -> SolveResult:
    if algorithm == "auto":
        return dispatch(net)
    try:
        fn = SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}") from None
    return fn(net)
