"""Ordered graph data model and the standard constructors."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from ordered_turan.errors import PreconditionError

Edge = tuple[int, int]


@dataclass(frozen=True)
class OrderedGraph:
    """Graph on the vertices 1..n, ordered by the integers.

    Edges are stored as ascending pairs ``(u, v)`` with ``u < v``. Instances are
    immutable and safe to share between workers.
    """

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise PreconditionError(f"vertex count must be a positive integer, got {self.n!r}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise PreconditionError(f"edge ({u}, {v}) is not an ascending pair in [1, {self.n}]")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "OrderedGraph":
        """Build a graph from pairs in either orientation; duplicates are rejected."""
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise PreconditionError(f"duplicate edge {pair}")
            seen.add(pair)
        return cls(n, frozenset(seen))

    @classmethod
    def empty(cls, n: int) -> "OrderedGraph":
        return cls(n, frozenset())

    @property
    def e(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """``out_neighbors[v]`` lists the neighbours above v, ascending (index 0 unused)."""
        table: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.sorted_edges:
            table[u].append(v)
        return tuple(tuple(sorted(row)) for row in table)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """``in_neighbors[v]`` lists the neighbours below v, ascending (index 0 unused)."""
        table: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.sorted_edges:
            table[v].append(u)
        return tuple(tuple(sorted(row)) for row in table)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def subgraph(self, edges: Iterable[Edge]) -> "OrderedGraph":
        """Spanning subgraph on the same vertex set keeping only ``edges``."""
        kept = frozenset(edges)
        missing = kept - self.edges
        if missing:
            raise PreconditionError(f"{len(missing)} edges are not edges of the host graph")
        return OrderedGraph(self.n, kept)

    def is_subgraph_of(self, other: "OrderedGraph") -> bool:
        return self.n == other.n and self.edges <= other.edges


@dataclass(frozen=True)
class BlowupLayout:
    """The interval I_x occupied by each base vertex x inside F(t)."""

    base: OrderedGraph
    t: int
    intervals: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        """Number of classes."""
        return len(self.intervals)

    def class_of(self, v: int) -> int:
        """Index (1-based) of the base vertex whose interval contains v."""
        return (v - 1) // self.t + 1


def make_path(k: int) -> OrderedGraph:
    """Ascending path P_k on [k+1] with k edges."""
    if k < 1:
        raise PreconditionError(f"path length must be at least 1, got {k}")
    return OrderedGraph(k + 1, frozenset((i, i + 1) for i in range(1, k + 1)))


def make_cycle(length: int) -> OrderedGraph:
    """Ordered cycle C_l: consecutive pairs plus (1, l)."""
    if length < 3:
        raise PreconditionError(f"cycle length must be at least 3, got {length}")
    edges = {(i, i + 1) for i in range(1, length)}
    edges.add((1, length))
    return OrderedGraph(length, frozenset(edges))


def make_clique(r: int) -> OrderedGraph:
    """Ordered clique K_r."""
    if r < 1:
        raise PreconditionError(f"clique order must be at least 1, got {r}")
    return OrderedGraph(r, frozenset((u, v) for u in range(1, r + 1) for v in range(u + 1, r + 1)))


def blow_up(base: OrderedGraph, t: int) -> tuple[OrderedGraph, BlowupLayout]:
    """F(t): every vertex becomes an interval of t vertices, every edge a complete bundle."""
    if t < 1:
        raise PreconditionError(f"blow-up factor must be at least 1, got {t}")
    intervals = tuple(
        tuple(range((x - 1) * t + 1, x * t + 1)) for x in range(1, base.n + 1)
    )
    edges = frozenset(
        (a, b)
        for x, y in base.edges
        for a in intervals[x - 1]
        for b in intervals[y - 1]
    )
    return OrderedGraph(base.n * t, edges), BlowupLayout(base=base, t=t, intervals=intervals)


def is_monotone_path(pattern: OrderedGraph) -> Optional[int]:
    """Return k when ``pattern`` is exactly P_k, otherwise None."""
    if pattern.n < 2:
        return None
    if pattern.edges == make_path(pattern.n - 1).edges:
        return pattern.n - 1
    return None


_PATTERN_RE = re.compile(r"^\s*([PCK])\s*_?\s*(\d+)\s*$", re.IGNORECASE)


def parse_pattern(text: str) -> OrderedGraph:
    """Shorthand ``P3``, ``C5`` or ``K4`` for the standard patterns."""
    match = _PATTERN_RE.match(text)
    if not match:
        raise PreconditionError(f"unknown pattern shorthand {text!r}; expected P<k>, C<l> or K<r>")
    kind, size = match.group(1).upper(), int(match.group(2))
    if kind == "P":
        return make_path(size)
    if kind == "C":
        return make_cycle(size)
    return make_clique(size)
