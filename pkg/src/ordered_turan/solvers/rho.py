"""Per-graph relative density ρ̂(G, F) = max e(G') / e(G) over F-free G' ⊆ G.

Solving methods register themselves by name; ``rho_hat`` dispatches on it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Protocol

from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.core.graph import OrderedGraph, is_monotone_path
from ordered_turan.core.parameters import longest_monotone_path_len
from ordered_turan.errors import PreconditionError
from ordered_turan.solvers.exact import max_ffree_oracle, max_pkfree_exact
from ordered_turan.solvers.leveling import SolveResult, best_leveling_sampled

logger = get_logger(__name__)


class RhoMethod(Protocol):
    def __call__(
        self,
        graph: OrderedGraph,
        pattern: OrderedGraph,
        *,
        settings: Settings,
        trials: int,
        seed: int,
    ) -> SolveResult: ...


_METHODS: dict[str, RhoMethod] = {}


def register(name: str) -> Callable[[RhoMethod], RhoMethod]:
    def decorator(fn: RhoMethod) -> RhoMethod:
        _METHODS[name] = fn
        return fn

    return decorator


def list_methods() -> list[str]:
    return sorted(_METHODS)


def _path_length(pattern: OrderedGraph) -> int:
    k = is_monotone_path(pattern)
    if k is None:
        raise PreconditionError("the exact solver handles monotone path patterns P_k only")
    return k


@register("exact")
def _exact(graph, pattern, *, settings, trials, seed):
    return max_pkfree_exact(graph, _path_length(pattern), settings=settings)


@register("oracle")
def _oracle(graph, pattern, *, settings, trials, seed):
    return max_ffree_oracle(graph, pattern, settings=settings)


@register("leveling")
def _leveling(graph, pattern, *, settings, trials, seed):
    # G_φ has no ascending path with ℓ(F) edges, and F contains one
    return best_leveling_sampled(graph, longest_monotone_path_len(pattern), trials, seed)


@register("auto")
def _auto(graph, pattern, *, settings, trials, seed):
    if is_monotone_path(pattern) is not None:
        return _exact(graph, pattern, settings=settings, trials=trials, seed=seed)
    return _oracle(graph, pattern, settings=settings, trials=trials, seed=seed)


def solve_relative(
    graph: OrderedGraph,
    pattern: OrderedGraph,
    method: str = "auto",
    *,
    trials: int = 1000,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> SolveResult:
    settings = settings or get_settings()
    if graph.e == 0:
        raise PreconditionError("relative density is undefined for an edgeless host")
    if pattern.e == 0:
        raise PreconditionError("relative density is undefined for an edgeless pattern")
    try:
        solver = _METHODS[method]
    except KeyError:
        raise PreconditionError(
            f"unknown method {method!r}; available: {', '.join(list_methods())}"
        ) from None
    result = solver(graph, pattern, settings=settings, trials=trials, seed=seed)
    if not result.optimal:
        logger.info("Relative density is a lower bound", method=result.method, ratio=str(result.ratio))
    return result


def rho_hat(
    graph: OrderedGraph,
    pattern: OrderedGraph,
    method: str = "auto",
    *,
    trials: int = 1000,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> Fraction:
    """ρ̂(G, F); exact whenever the chosen solver proves optimality."""
    return solve_relative(graph, pattern, method, trials=trials, seed=seed, settings=settings).ratio
