"""Exact maximum P_k-free subgraphs, and the edge-subset oracle for general F.

A subgraph G' has no ascending path with k edges iff its ascending DP values lie
in [k] iff some f: V -> [k] increases along every edge of G'. Maximising over
edge subsets is therefore the same as maximising, over f: V -> [k], the number of
edges along which f increases, which is what the branch and bound searches.
"""

from __future__ import annotations

import sys
from functools import reduce
from itertools import combinations
from operator import or_
from typing import Optional

from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.core.embedding import iter_embeddings
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.errors import PreconditionError, SizeCapError
from ordered_turan.solvers.leveling import Leveling, SolveResult, edge_ratio

logger = get_logger(__name__)


class _BudgetExhausted(Exception):
    pass


def _greedy_levels(graph: OrderedGraph, k: int) -> list[int]:
    levels = [0] * (graph.n + 1)
    for y in graph.vertices:
        below = graph.in_neighbors[y]
        levels[y] = min(k, 1 + max((levels[x] for x in below), default=0))
    return levels


def _score(graph: OrderedGraph, levels: list[int]) -> int:
    return sum(1 for x, y in graph.edges if levels[x] < levels[y])


def max_pkfree_exact(
    graph: OrderedGraph,
    k: int,
    budget: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> SolveResult:
    """Largest subgraph without an ascending path of k edges.

    Levels are assigned in vertex order, trying 1..k; a node is cut when the
    respected edges so far plus the still-open edges cannot beat the incumbent.
    Open edges leaving a vertex on level k can never be respected and are left
    out of the bound. Vertices without lower neighbours only take level 1.

    When k^n fits ``settings.enumeration_cap`` the search is unbounded; otherwise
    it stops after ``budget`` (default ``settings.node_budget``) nodes and returns
    the incumbent with ``optimal=False``. A completed search returns the
    lexicographically least optimal leveling.
    """
    settings = settings or get_settings()
    if k < 1:
        raise PreconditionError(f"path length must be at least 1, got {k}")

    n = graph.n
    limit: Optional[int] = None
    if k**n > settings.enumeration_cap:
        limit = budget if budget is not None else settings.node_budget

    in_nbrs = graph.in_neighbors
    out_deg = [len(row) for row in graph.out_neighbors]
    suffix_in = [0] * (n + 2)
    for y in range(n, 0, -1):
        suffix_in[y] = suffix_in[y + 1] + len(in_nbrs[y])

    greedy = _greedy_levels(graph, k)
    best_score = _score(graph, greedy) - 1  # an equal-scoring leveling found in order wins
    best_levels = greedy[:]
    levels = [0] * (n + 1)
    nodes = 0

    def search(y: int, score: int, dead: int) -> None:
        nonlocal nodes, best_score, best_levels
        nodes += 1
        if limit is not None and nodes > limit:
            raise _BudgetExhausted
        if y > n:
            if score > best_score:
                best_score, best_levels = score, levels[:]
            return
        if score + suffix_in[y] - dead <= best_score:
            return
        below = in_nbrs[y]
        closing = sum(1 for x in below if levels[x] == k)
        for level in range(1, (k if below else 1) + 1):
            gain = sum(1 for x in below if levels[x] < level)
            levels[y] = level
            search(y + 1, score + gain, dead - closing + (out_deg[y] if level == k else 0))
        levels[y] = 0

    recursion_limit = sys.getrecursionlimit()
    if n + 50 > recursion_limit:
        sys.setrecursionlimit(n + 50)
    optimal = True
    try:
        search(1, 0, 0)
    except _BudgetExhausted:
        optimal = False
        logger.warning("Exact solver budget exhausted", n=n, k=k, nodes=limit, best=best_score)
    finally:
        sys.setrecursionlimit(recursion_limit)

    certificate = Leveling(n=n, levels=tuple(best_levels[1:]), L=k)
    kept = certificate.kept_edges(graph)
    logger.debug(
        "Exact P_k-free search finished",
        n=n,
        edges=graph.e,
        k=k,
        kept=len(kept),
        nodes=nodes,
        optimal=optimal,
    )
    return SolveResult(
        kept_edges=kept,
        ratio=edge_ratio(len(kept), graph),
        certificate=certificate,
        nodes_explored=nodes,
        optimal=optimal,
        method="exact",
    )


def max_ffree_oracle(
    graph: OrderedGraph, pattern: OrderedGraph, settings: Optional[Settings] = None
) -> SolveResult:
    """Largest F-free subgraph by enumerating edge subsets, largest first.

    Copies of F are listed once as edge bitmasks; a kept set is F-free iff every
    copy loses at least one edge. Among optimal kept sets the lexicographically
    least is returned.
    """
    settings = settings or get_settings()
    if graph.e > settings.oracle_max_edges:
        raise SizeCapError(
            f"edge-subset oracle is limited to {settings.oracle_max_edges} edges, got {graph.e}"
        )
    if pattern.e == 0 and pattern.n <= graph.n:
        raise PreconditionError("every subgraph contains an edgeless pattern that fits")

    edges = graph.sorted_edges
    bit = {edge: 1 << i for i, edge in enumerate(edges)}
    copies = sorted(
        {reduce(or_, (bit[edge] for edge in emb.image_edges(pattern)), 0)
         for emb in iter_embeddings(graph, pattern)}
    )
    checked = 0
    for removed in range(graph.e + 1):
        feasible: list[tuple[int, ...]] = []
        for dropped in combinations(range(graph.e), removed):
            checked += 1
            mask = reduce(or_, (1 << i for i in dropped), 0)
            if all(copy & mask for copy in copies):
                feasible.append(tuple(i for i in range(graph.e) if not mask >> i & 1))
        if feasible:
            kept_idx = min(feasible)
            kept = frozenset(edges[i] for i in kept_idx)
            logger.debug(
                "Oracle search finished",
                edges=graph.e,
                copies=len(copies),
                kept=len(kept),
                subsets=checked,
            )
            return SolveResult(
                kept_edges=kept,
                ratio=edge_ratio(len(kept), graph),
                certificate=None,
                nodes_explored=checked,
                optimal=True,
                method="oracle",
                detail={"copies": len(copies)},
            )
    raise AssertionError("the empty subgraph is always F-free")
