"""Order-preserving containment of one ordered graph in another."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from ordered_turan.core.graph import OrderedGraph


@dataclass(frozen=True)
class OrderedEmbedding:
    """Strictly increasing map from V(F) into V(G) carrying edges to edges.

    ``mapping[i - 1]`` is the image of pattern vertex i.
    """

    mapping: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.mapping[v - 1]

    def is_valid(self, host: OrderedGraph, pattern: OrderedGraph) -> bool:
        if len(self.mapping) != pattern.n:
            return False
        if any(not 1 <= w <= host.n for w in self.mapping):
            return False
        if any(a >= b for a, b in zip(self.mapping, self.mapping[1:])):
            return False
        return all((self(u), self(v)) in host.edges for u, v in pattern.edges)

    def image_edges(self, pattern: OrderedGraph) -> frozenset[tuple[int, int]]:
        return frozenset((self(u), self(v)) for u, v in pattern.edges)


def iter_embeddings(host: OrderedGraph, pattern: OrderedGraph) -> Iterator[OrderedEmbedding]:
    """Yield every embedding of ``pattern`` into ``host`` in lexicographic order.

    Backtracks over increasing partial maps. A host candidate for pattern vertex i
    must leave room for the remaining pattern vertices, have at least i's up- and
    down-degree, and be adjacent to the images of i's lower neighbours.
    """
    f, g = pattern.n, host.n
    if f > g or pattern.e > host.e:
        return

    p_in = pattern.in_neighbors
    p_out_deg = [len(row) for row in pattern.out_neighbors]
    p_in_deg = [len(row) for row in p_in]
    h_out = host.out_neighbors
    h_in_deg = [len(row) for row in host.in_neighbors]
    h_out_deg = [len(row) for row in h_out]
    h_edges = host.edges

    image = [0] * (f + 1)

    def candidates(i: int) -> Iterator[int]:
        low = image[i - 1] + 1
        high = g - (f - i)
        if p_in[i]:
            # every candidate must be an upper neighbour of the first lower neighbour's image
            pool = (w for w in h_out[image[p_in[i][0]]] if low <= w <= high)
        else:
            pool = iter(range(low, high + 1))
        for w in pool:
            if h_out_deg[w] < p_out_deg[i] or h_in_deg[w] < p_in_deg[i]:
                continue
            if all((image[j], w) in h_edges for j in p_in[i]):
                yield w

    def extend(i: int) -> Iterator[OrderedEmbedding]:
        if i > f:
            yield OrderedEmbedding(tuple(image[1:]))
            return
        for w in candidates(i):
            image[i] = w
            yield from extend(i + 1)
        image[i] = 0

    yield from extend(1)


def contains(host: OrderedGraph, pattern: OrderedGraph) -> Optional[OrderedEmbedding]:
    """The lexicographically least embedding of ``pattern`` in ``host``, or None."""
    return next(iter_embeddings(host, pattern), None)


def brute_force_embeddings(host: OrderedGraph, pattern: OrderedGraph) -> list[OrderedEmbedding]:
    """Every increasing injection checked directly; the reference oracle for ``contains``."""
    found = []
    for chosen in combinations(host.vertices, pattern.n):
        candidate = OrderedEmbedding(tuple(chosen))
        if all((candidate(u), candidate(v)) in host.edges for u, v in pattern.edges):
            found.append(candidate)
    return found
