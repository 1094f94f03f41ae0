"""P_k-free subgraph solvers, relative density and blow-up counting."""

from ordered_turan.solvers.exact import max_ffree_oracle, max_pkfree_exact
from ordered_turan.solvers.leveling import (
    Leveling,
    SolveResult,
    ascending_dp,
    best_leveling_sampled,
    edge_ratio,
    random_leveling_subgraph,
)
from ordered_turan.solvers.rho import list_methods, register, rho_hat, solve_relative
from ordered_turan.solvers.transversal import (
    TransversalReport,
    default_rich_threshold,
    transversal_report,
)
from ordered_turan.solvers.verify import verify_ratio_bound

__all__ = [
    "Leveling",
    "SolveResult",
    "TransversalReport",
    "ascending_dp",
    "best_leveling_sampled",
    "default_rich_threshold",
    "edge_ratio",
    "list_methods",
    "max_ffree_oracle",
    "max_pkfree_exact",
    "random_leveling_subgraph",
    "register",
    "rho_hat",
    "solve_relative",
    "transversal_report",
    "verify_ratio_bound",
]
