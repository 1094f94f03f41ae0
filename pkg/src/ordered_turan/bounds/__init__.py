"""Simplex function h_d and the exact inequalities around it."""

from ordered_turan.bounds.simplex import (
    BoundReport,
    SimplexVector,
    asymptotic_check,
    check_recursion,
    choose_depth,
    cross_sum,
    depth_condition,
    depth_table,
    h,
    harmonic,
    midpoint,
    parallelogram_gap,
    partition_bound_rhs,
    random_simplex,
    ratio_bound,
    uniform_ratio_limit,
)

__all__ = [
    "BoundReport",
    "SimplexVector",
    "asymptotic_check",
    "check_recursion",
    "choose_depth",
    "cross_sum",
    "depth_condition",
    "depth_table",
    "h",
    "harmonic",
    "midpoint",
    "parallelogram_gap",
    "partition_bound_rhs",
    "random_simplex",
    "ratio_bound",
    "uniform_ratio_limit",
]
