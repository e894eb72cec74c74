"""Relaxed graph coloring with relaxed and proper color classes."""

from .graph import (
    ColorScheme,
    ConflictReport,
    CostParams,
    Graph,
    InfeasibleColoring,
    InstanceTooLarge,
    Multigraph,
    conflict_profile,
    conflicted_node_count,
    covered_edges,
    defective_cost,
    generalized_cost,
    is_feasible,
)
from .solvers import (
    SearchBudget,
    Solution,
    solve,
    solve_exact,
    solve_greedy,
    solve_half_approx,
    solve_local_search,
    solve_r12_structural,
)

__version__ = "0.1.0"
