"""Executable ratio bound for P_k-free subgraphs of a constructed graph."""

from __future__ import annotations

from fractions import Fraction

from structlog import get_logger

from ordered_turan.bounds.simplex import BoundReport, ratio_bound
from ordered_turan.construction.recursive import ConstructedGraph
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.errors import PreconditionError
from ordered_turan.solvers.leveling import ascending_dp

logger = get_logger(__name__)


def verify_ratio_bound(constructed: ConstructedGraph, sub: OrderedGraph, k: int) -> BoundReport:
    """e(G')/e(G) <= (h_d(α) + dε)/(2d), α the level proportions of ascending_dp(G').

    The levels of G' split [n] into k classes (some possibly empty) with every
    edge of G' ascending between them, so the partition bound applies.
    """
    params = constructed.params
    if k != params.k:
        raise PreconditionError(f"graph was built for k={params.k}, asked to verify k={k}")
    if params.d < 1:
        raise PreconditionError("ratio bound needs d >= 1; G_ε(n, 0) has no edges")
    if not sub.is_subgraph_of(constructed.graph):
        raise PreconditionError("G' is not a subgraph of the constructed graph")

    f = ascending_dp(sub)
    if f.L > k:
        raise PreconditionError(
            f"G' contains an ascending path with {k} edges", witness={"levels": list(f.levels)}
        )
    alpha = f.proportions(k)
    report = BoundReport(
        lhs=Fraction(sub.e, constructed.graph.e),
        rhs=ratio_bound(alpha, params.d, params.eps),
        note="" if constructed.certified else "uncertified",
    )
    logger.debug(
        "Ratio bound evaluated",
        kept=sub.e,
        edges=constructed.graph.e,
        lhs=str(report.lhs),
        rhs=str(report.rhs),
        holds=report.holds,
    )
    return report
