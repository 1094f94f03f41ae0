"""Monotone path length, chromatic numbers and the Turán-type densities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.errors import PreconditionError, SizeCapError

logger = get_logger(__name__)


def ascending_levels(graph: OrderedGraph) -> list[int]:
    """f(y) = 1 + max f(x) over lower neighbours x of y, or 1; index 0 unused.

    One left-to-right pass: every lower neighbour is final before y is visited.
    """
    levels = [0] * (graph.n + 1)
    in_nbrs = graph.in_neighbors
    for y in graph.vertices:
        below = in_nbrs[y]
        levels[y] = 1 + max((levels[x] for x in below), default=0)
    return levels


def longest_monotone_path_len(graph: OrderedGraph) -> int:
    """Number of edges of a longest ascending path."""
    return max(ascending_levels(graph)[1:]) - 1


def interval_chromatic(graph: OrderedGraph) -> int:
    """Least number of independent intervals partitioning [n].

    ``lo[b]`` is the smallest a with [a, b] independent; ``best[b]`` the least number
    of intervals covering [1, b]. Since ``best`` is nondecreasing, the optimal last
    interval for a prefix is the longest one.
    """
    lo = [1] * (graph.n + 1)
    best = [0] * (graph.n + 1)
    in_nbrs = graph.in_neighbors
    for b in graph.vertices:
        start = lo[b - 1] if b > 1 else 1
        if in_nbrs[b]:
            start = max(start, in_nbrs[b][-1] + 1)
        lo[b] = start
        best[b] = best[start - 1] + 1
    return best[graph.n]


def _interval_independent(graph: OrderedGraph, a: int, b: int) -> bool:
    return not any(a <= u and v <= b for u, v in graph.edges)


def brute_force_interval_chromatic(graph: OrderedGraph) -> int:
    """Minimum over every composition of [n] into intervals; the oracle for the DP."""
    n = graph.n
    best = n
    for parts in range(1, n + 1):
        for cuts in combinations(range(1, n), parts - 1):
            bounds = (0, *cuts, n)
            if all(
                _interval_independent(graph, bounds[i] + 1, bounds[i + 1])
                for i in range(len(bounds) - 1)
            ):
                return parts
    return best


def chromatic(graph: OrderedGraph, settings: Optional[Settings] = None) -> int:
    """Exact chromatic number by backtracking colourings with colour-symmetry breaking."""
    settings = settings or get_settings()
    if graph.n > settings.chromatic_max_vertices:
        raise SizeCapError(
            f"chromatic number is limited to {settings.chromatic_max_vertices} vertices, "
            f"got {graph.n}"
        )
    if graph.e == 0:
        return 1

    n = graph.n
    adjacency = [set() for _ in range(n + 1)]
    for u, v in graph.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    # high-degree vertices first
    order = sorted(graph.vertices, key=lambda v: (-len(adjacency[v]), v))

    def colourable(colours: int) -> bool:
        colour = [0] * (n + 1)

        def place(idx: int, used: int) -> bool:
            if idx == n:
                return True
            v = order[idx]
            blocked = {colour[w] for w in adjacency[v]}
            for c in range(1, min(used + 1, colours) + 1):
                if c in blocked:
                    continue
                colour[v] = c
                if place(idx + 1, max(used, c)):
                    return True
            colour[v] = 0
            return False

        return place(0, 0)

    for colours in range(2, n + 1):
        if colourable(colours):
            return colours
    return n


@dataclass(frozen=True)
class TuranParameters:
    """Exact π(F), π⃗(F) and the leveling lower bound on ρ(F)."""

    pi: Fraction
    vec_pi: Fraction
    rho_lower: Fraction
    chromatic: int
    interval_chromatic: int
    longest_path: int


def turan_parameters(pattern: OrderedGraph, settings: Optional[Settings] = None) -> TuranParameters:
    if pattern.e == 0:
        raise PreconditionError("Turán parameters are undefined for an edgeless pattern")
    chi = chromatic(pattern, settings)
    chi_lt = interval_chromatic(pattern)
    ell = longest_monotone_path_len(pattern)
    params = TuranParameters(
        pi=1 - Fraction(1, chi - 1),
        vec_pi=1 - Fraction(1, chi_lt - 1),
        rho_lower=Fraction(ell - 1, 2 * ell),
        chromatic=chi,
        interval_chromatic=chi_lt,
        longest_path=ell,
    )
    logger.debug(
        "Turán parameters computed",
        n=pattern.n,
        edges=pattern.e,
        chromatic=chi,
        interval_chromatic=chi_lt,
        longest_path=ell,
    )
    return params
