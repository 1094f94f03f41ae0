"""Levelings: maps V -> [L] whose increasing edges form P_L-free subgraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import numpy as np
from structlog import get_logger

from ordered_turan.bounds.simplex import SimplexVector
from ordered_turan.core.graph import Edge, OrderedGraph
from ordered_turan.core.io import format_rational
from ordered_turan.core.parameters import ascending_levels
from ordered_turan.errors import PreconditionError

logger = get_logger(__name__)


@dataclass(frozen=True)
class Leveling:
    """``levels[v - 1]`` is the level of vertex v, in [1, L]."""

    n: int
    levels: tuple[int, ...]
    L: int

    def __post_init__(self):
        if len(self.levels) != self.n:
            raise PreconditionError(f"leveling covers {len(self.levels)} vertices, expected {self.n}")
        if self.L < 1 or any(not 1 <= lv <= self.L for lv in self.levels):
            raise PreconditionError(f"levels must lie in [1, {self.L}]")

    def __call__(self, v: int) -> int:
        return self.levels[v - 1]

    def respects(self, edge: Edge) -> bool:
        u, v = edge
        return self(u) < self(v)

    def certifies(self, graph: OrderedGraph) -> bool:
        """Every edge strictly increases in level, so ``graph`` has no P_L."""
        return graph.n == self.n and all(self.respects(edge) for edge in graph.edges)

    def kept_edges(self, graph: OrderedGraph) -> frozenset[Edge]:
        return frozenset(edge for edge in graph.edges if self.respects(edge))

    def proportions(self, k: Optional[int] = None) -> SimplexVector:
        """α_i = |f^{-1}(i)| / n for i in [k] (k defaults to L)."""
        k = k or self.L
        if max(self.levels) > k:
            raise PreconditionError(f"leveling uses levels above {k}")
        counts = [0] * k
        for lv in self.levels:
            counts[lv - 1] += 1
        return SimplexVector.from_counts(counts)


@dataclass(frozen=True)
class SolveResult:
    kept_edges: frozenset[Edge]
    ratio: Fraction
    certificate: Optional[Leveling]
    nodes_explored: int
    optimal: bool
    method: str = ""
    mean_ratio: Optional[Fraction] = None
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def kept(self) -> int:
        return len(self.kept_edges)

    def subgraph(self, host: OrderedGraph) -> OrderedGraph:
        return host.subgraph(self.kept_edges)

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "method": self.method,
            "kept_edges": [list(edge) for edge in sorted(self.kept_edges)],
            "kept": self.kept,
            "ratio": format_rational(self.ratio),
            "certificate": list(self.certificate.levels) if self.certificate else None,
            "nodes_explored": self.nodes_explored,
            "optimal": self.optimal,
        }
        if self.mean_ratio is not None:
            payload["mean_ratio"] = format_rational(self.mean_ratio)
        if self.detail:
            payload["detail"] = self.detail
        return payload


def edge_ratio(kept: int, host: OrderedGraph) -> Fraction:
    """kept / e(host); an edgeless host keeps everything, ratio 1."""
    return Fraction(kept, host.e) if host.e else Fraction(1)


def ascending_dp(graph: OrderedGraph) -> Leveling:
    """f(y) = 1 + max f over lower neighbours; max f = longest ascending path + 1."""
    levels = ascending_levels(graph)[1:]
    return Leveling(n=graph.n, levels=tuple(levels), L=max(levels))


def _edge_arrays(graph: OrderedGraph) -> tuple[np.ndarray, np.ndarray]:
    edges = graph.sorted_edges
    tails = np.fromiter((u - 1 for u, _ in edges), dtype=np.int64, count=len(edges))
    heads = np.fromiter((v - 1 for _, v in edges), dtype=np.int64, count=len(edges))
    return tails, heads


def _draw_levels(rng: np.random.Generator, n: int, L: int) -> np.ndarray:
    return rng.integers(1, L + 1, size=n)


def random_leveling_subgraph(
    graph: OrderedGraph, L: int, seed: int
) -> tuple[OrderedGraph, Leveling]:
    """G_φ for φ uniform on [L]^V: the edges x < y with φ(x) < φ(y)."""
    if L < 1:
        raise PreconditionError(f"number of levels must be positive, got {L}")
    rng = np.random.default_rng(seed)
    phi = Leveling(n=graph.n, levels=tuple(int(x) for x in _draw_levels(rng, graph.n, L)), L=L)
    return OrderedGraph(graph.n, phi.kept_edges(graph)), phi


def best_leveling_sampled(graph: OrderedGraph, L: int, trials: int, seed: int) -> SolveResult:
    """Best of ``trials`` independent uniform levelings; a lower-bound witness only.

    Trial i uses the i-th draw of ``default_rng(seed)``, so one trial reproduces
    ``random_leveling_subgraph`` with the same seed. Ties keep the earliest trial.
    """
    if L < 1:
        raise PreconditionError(f"number of levels must be positive, got {L}")
    if trials < 1:
        raise PreconditionError(f"trials must be at least 1, got {trials}")

    rng = np.random.default_rng(seed)
    tails, heads = _edge_arrays(graph)
    best_count, best_levels, total = -1, None, 0
    for _ in range(trials):
        levels = _draw_levels(rng, graph.n, L)
        count = int(np.count_nonzero(levels[tails] < levels[heads]))
        total += count
        if count > best_count:
            best_count, best_levels = count, levels

    assert best_levels is not None
    phi = Leveling(n=graph.n, levels=tuple(int(x) for x in best_levels), L=L)
    mean = Fraction(total, trials * graph.e) if graph.e else Fraction(1)
    result = SolveResult(
        kept_edges=phi.kept_edges(graph),
        ratio=edge_ratio(best_count, graph),
        certificate=phi,
        nodes_explored=trials,
        optimal=False,
        method="leveling",
        mean_ratio=mean,
        detail={"levels": L, "trials": trials, "seed": seed},
    )
    logger.debug(
        "Leveling lower bound sampled",
        n=graph.n,
        edges=graph.e,
        levels=L,
        trials=trials,
        best=best_count,
        mean=float(mean),
    )
    return result
