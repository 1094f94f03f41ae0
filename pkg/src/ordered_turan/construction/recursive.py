"""Recursive extremal graphs G_ε(n, d).

G_ε(n, 0) is edgeless. For d >= 1 the halves [n/2] and (n/2, n] carry copies of
G_ε(n/2, d-1) and the pairs between them form a certified block B_ε(n, d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from structlog import get_logger

from ordered_turan.bounds.simplex import BoundReport, SimplexVector, partition_bound_rhs
from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.construction.bipartite import build_bipartite_attempt
from ordered_turan.construction.certify import CertifyMode, QuasirandomCertificate
from ordered_turan.construction.seeds import SEED_MASK, derive_seed
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.core.io import format_rational
from ordered_turan.errors import PreconditionError

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConstructionParams:
    eps: Fraction
    d: int
    k: int
    n: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not (0 < self.eps <= 1):
            raise PreconditionError(f"eps must lie in (0, 1], got {self.eps}")
        if self.d < 0:
            raise PreconditionError(f"d must be nonnegative, got {self.d}")
        if self.k < 2:
            raise PreconditionError(f"k must be at least 2, got {self.k}")
        if self.n < 1:
            raise PreconditionError(f"n must be positive, got {self.n}")
        if self.n % 2**self.d:
            raise PreconditionError(
                f"n={self.n} is not divisible by 2^d={2 ** self.d}", reason="divisibility"
            )
        if not 0 <= self.seed <= SEED_MASK:
            raise PreconditionError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "eps": format_rational(self.eps),
            "d": self.d,
            "k": self.k,
            "n": self.n,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class BlockRecord:
    """The bipartite block at one recursion node.

    ``path`` is the node's address ("" for the root, then "0"/"1" for the lower and
    upper half); ``offset`` shifts the block's local labels into [n].
    """

    path: str
    offset: int
    size: int
    d: int
    block: OrderedGraph
    certificate: QuasirandomCertificate
    seed: int
    attempts: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "path": self.path,
            "offset": self.offset,
            "size": self.size,
            "d": self.d,
            "edges": self.block.e,
            "seed": self.seed,
            "attempts": self.attempts,
            "certificate": self.certificate.to_dict(),
        }


@dataclass(frozen=True)
class ConstructedGraph:
    graph: OrderedGraph
    params: ConstructionParams
    blocks: tuple[BlockRecord, ...]

    @property
    def certified(self) -> bool:
        """Every block passed a proof-grade certificate (sampled blocks do not count)."""
        return all(b.certificate.passed and not b.certificate.evidence_only for b in self.blocks)

    @property
    def seed_trail(self) -> tuple[tuple[str, int, int], ...]:
        """(node path, node seed, attempts) per block."""
        return tuple((b.path, b.seed, b.attempts) for b in self.blocks)


def edge_count_formula(n: int, d: int) -> int:
    """d n² / 2^{d+1}."""
    if d < 0 or n < 1:
        raise PreconditionError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    count, remainder = divmod(d * n * n, 2 ** (d + 1))
    if remainder:
        raise PreconditionError(f"d n²/2^(d+1) is not an integer for n={n}, d={d}")
    return count


def build_g(
    params: ConstructionParams,
    settings: Optional[Settings] = None,
    strict: bool = True,
    mode: CertifyMode = "auto",
) -> ConstructedGraph:
    """Build G_ε(n, d); each node's seed is derived from (params.seed, node path)."""
    settings = settings or get_settings()
    edges: set[tuple[int, int]] = set()
    blocks: list[BlockRecord] = []

    def build_node(size: int, depth_param: int, path: str, offset: int) -> None:
        if depth_param == 0:
            return
        node_seed = derive_seed(params.seed, "node", path)
        attempt = build_bipartite_attempt(
            size,
            depth_param,
            params.eps,
            params.k,
            node_seed,
            mode=mode,
            settings=settings,
            strict=strict,
        )
        edges.update((u + offset, v + offset) for u, v in attempt.graph.edges)
        blocks.append(
            BlockRecord(
                path=path,
                offset=offset,
                size=size,
                d=depth_param,
                block=attempt.graph,
                certificate=attempt.certificate,
                seed=node_seed,
                attempts=attempt.attempts,
            )
        )
        half = size // 2
        build_node(half, depth_param - 1, path + "0", offset)
        build_node(half, depth_param - 1, path + "1", offset + half)

    build_node(params.n, params.d, "", 0)

    graph = OrderedGraph(params.n, frozenset(edges))
    expected = edge_count_formula(params.n, params.d)
    if graph.e != expected:
        raise AssertionError(f"built {graph.e} edges, expected {expected}")

    constructed = ConstructedGraph(graph=graph, params=params, blocks=tuple(blocks))
    logger.info(
        "Constructed graph built",
        n=params.n,
        d=params.d,
        k=params.k,
        eps=str(params.eps),
        edges=graph.e,
        blocks=len(blocks),
        certified=constructed.certified,
    )
    return constructed


def _partition_index(n: int, partition: Sequence[Sequence[int]]) -> list[int]:
    index = [0] * (n + 1)
    for i, part in enumerate(partition, start=1):
        for v in part:
            if not 1 <= v <= n:
                raise PreconditionError(f"vertex {v} is outside [1, {n}]")
            if index[v]:
                raise PreconditionError(f"vertex {v} appears in two partition classes")
            index[v] = i
    missing = [v for v in range(1, n + 1) if not index[v]]
    if missing:
        raise PreconditionError(f"partition misses {len(missing)} vertices, e.g. {missing[0]}")
    return index


def ascending_cross_edges(graph: OrderedGraph, partition: Sequence[Sequence[int]]) -> int:
    """Edges x < y with x in V_i and y in V_j for some i < j."""
    index = _partition_index(graph.n, partition)
    return sum(1 for x, y in graph.edges if index[x] < index[y])


def partition_bound(constructed: ConstructedGraph, partition: Sequence[Sequence[int]]) -> BoundReport:
    """Ascending cross edges <= (h_d(α) + dε) n²/2^{d+2}, α_i = |V_i|/n.

    The partition must have exactly k classes (empty ones allowed): the block
    tolerances were sized for k classes.
    """
    params = constructed.params
    if len(partition) != params.k:
        raise PreconditionError(f"partition must have k={params.k} classes, got {len(partition)}")
    lhs = ascending_cross_edges(constructed.graph, partition)
    alpha = SimplexVector.from_counts(len(part) for part in partition)
    rhs = partition_bound_rhs(alpha, params.d, params.eps, params.n)
    return BoundReport(lhs=Fraction(lhs), rhs=rhs)
