"""Tests for monotone paths, chromatic numbers and Turán parameters."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from ordered_turan.config.settings import Settings
from ordered_turan.core.graph import OrderedGraph, make_clique, make_cycle, make_path
from ordered_turan.core.parameters import (
    ascending_levels,
    brute_force_interval_chromatic,
    chromatic,
    interval_chromatic,
    longest_monotone_path_len,
    turan_parameters,
)
from ordered_turan.errors import PreconditionError, SizeCapError


def _random_graph(rng: np.random.Generator, n: int, p: float) -> OrderedGraph:
    edges = [pair for pair in combinations(range(1, n + 1), 2) if rng.random() < p]
    return OrderedGraph(n, frozenset(edges))


def test_ascending_levels_examples():
    assert ascending_levels(make_path(3))[1:] == [1, 2, 3, 4]
    bipartite = OrderedGraph(4, frozenset({(1, 3), (1, 4), (2, 3), (2, 4)}))
    assert ascending_levels(bipartite)[1:] == [1, 1, 2, 2]
    assert ascending_levels(OrderedGraph.empty(3))[1:] == [1, 1, 1]


def test_longest_path():
    assert longest_monotone_path_len(make_clique(5)) == 4
    assert longest_monotone_path_len(make_cycle(6)) == 5
    assert longest_monotone_path_len(OrderedGraph.empty(4)) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_path_parameters(k):
    params = turan_parameters(make_path(k))
    assert interval_chromatic(make_path(k)) == k + 1
    assert params.vec_pi == Fraction(k - 1, k)
    assert params.rho_lower == Fraction(k - 1, 2 * k)
    assert params.chromatic == 2


@pytest.mark.parametrize("length", range(3, 9))
def test_cycle_leveling_lower_bound(length):
    params = turan_parameters(make_cycle(length))
    assert params.rho_lower == Fraction(length - 2, 2 * length - 2)
    assert params.chromatic == (2 if length % 2 == 0 else 3)


def test_clique_parameters():
    params = turan_parameters(make_clique(4))
    assert params.pi == Fraction(2, 3)
    assert params.vec_pi == Fraction(2, 3)
    assert params.interval_chromatic == 4


def test_interval_chromatic_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(300):
        graph = _random_graph(rng, int(rng.integers(1, 9)), float(rng.random()))
        assert interval_chromatic(graph) == brute_force_interval_chromatic(graph)


def test_interval_chromatic_dominates_chromatic():
    rng = np.random.default_rng(4)
    for _ in range(100):
        graph = _random_graph(rng, int(rng.integers(2, 8)), 0.5)
        assert interval_chromatic(graph) >= chromatic(graph)


def test_chromatic_size_cap():
    settings = replace(Settings(), chromatic_max_vertices=4)
    with pytest.raises(SizeCapError):
        chromatic(make_path(5), settings)


def test_edgeless_pattern_rejected():
    with pytest.raises(PreconditionError):
        turan_parameters(OrderedGraph.empty(3))


def test_rho_lower_never_exceeds_vec_pi():
    rng = np.random.default_rng(5)
    patterns = [make_path(k) for k in range(1, 5)] + [make_cycle(5), make_clique(4)]
    while len(patterns) < 80:
        graph = _random_graph(rng, int(rng.integers(2, 8)), 0.5)
        if graph.e:
            patterns.append(graph)
    for pattern in patterns:
        params = turan_parameters(pattern)
        assert params.rho_lower <= params.vec_pi, sorted(pattern.edges)


def test_longest_path_zero_exactly_when_edgeless():
    rng = np.random.default_rng(6)
    for _ in range(200):
        graph = _random_graph(rng, int(rng.integers(1, 8)), float(rng.random()))
        assert (longest_monotone_path_len(graph) == 0) == (graph.e == 0)


def test_longest_path_never_drops_when_an_edge_is_added():
    rng = np.random.default_rng(7)
    for _ in range(200):
        graph = _random_graph(rng, int(rng.integers(2, 8)), 0.4)
        missing = [pair for pair in combinations(graph.vertices, 2) if pair not in graph.edges]
        if not missing:
            continue
        extra = missing[int(rng.integers(len(missing)))]
        grown = OrderedGraph(graph.n, graph.edges | {extra})
        assert longest_monotone_path_len(grown) >= longest_monotone_path_len(graph)
