"""Tests for order-preserving containment."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ordered_turan.core.embedding import brute_force_embeddings, contains, iter_embeddings
from ordered_turan.core.graph import OrderedGraph, blow_up, make_clique, make_cycle, make_path


def _random_graph(rng: np.random.Generator, n: int, p: float) -> OrderedGraph:
    edges = [pair for pair in combinations(range(1, n + 1), 2) if rng.random() < p]
    return OrderedGraph(n, frozenset(edges))


def test_path_in_clique_is_least_embedding():
    assert contains(make_clique(5), make_path(2)).mapping == (1, 2, 3)


def test_order_matters():
    # 1-3, 2-3: both edges end at the top vertex, so there is no ascending P_2
    host = OrderedGraph(3, frozenset({(1, 3), (2, 3)}))
    assert contains(host, make_path(2)) is None
    assert contains(make_path(3), make_path(2)) is not None


def test_pattern_larger_than_host():
    assert contains(make_path(2), make_path(3)) is None


def test_cycle_needs_closing_edge():
    assert contains(make_path(3), make_cycle(4)) is None
    assert contains(make_clique(4), make_cycle(4)).mapping == (1, 2, 3, 4)


def test_every_embedding_is_valid():
    host = make_clique(6)
    pattern = make_cycle(4)
    embeddings = list(iter_embeddings(host, pattern))
    assert len(embeddings) == 15
    assert all(emb.is_valid(host, pattern) for emb in embeddings)
    assert [emb.mapping for emb in embeddings] == sorted(emb.mapping for emb in embeddings)


def test_matches_brute_force_on_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(300):
        host = _random_graph(rng, int(rng.integers(2, 9)), 0.5)
        pattern = _random_graph(rng, int(rng.integers(2, 5)), 0.6)
        fast = [emb.mapping for emb in iter_embeddings(host, pattern)]
        slow = [emb.mapping for emb in brute_force_embeddings(host, pattern)]
        assert fast == slow


def test_containment_is_monotone_under_blow_up():
    rng = np.random.default_rng(5)
    for _ in range(100):
        pattern = _random_graph(rng, int(rng.integers(2, 5)), 0.6)
        if pattern.e == 0:
            continue
        host = _random_graph(rng, int(rng.integers(2, 8)), 0.5)
        t = int(rng.integers(1, 3))
        blown, _ = blow_up(pattern, t)
        if contains(host, pattern) is None:
            assert contains(host, blown) is None
        # a pattern always sits inside its own blow-up
        assert contains(blown, pattern) is not None
