"""Tests for transversal counting in blow-ups."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from ordered_turan.config.settings import Settings
from ordered_turan.core.graph import OrderedGraph, blow_up, make_clique, make_path
from ordered_turan.errors import PreconditionError, SizeCapError, SuiteViolation
from ordered_turan.harness import commands
from ordered_turan.solvers.rho import rho_hat
from ordered_turan.solvers.transversal import default_rich_threshold, transversal_report


def _random_base(rng: np.random.Generator, m: int) -> OrderedGraph:
    pairs = list(combinations(range(1, m + 1), 2))
    while True:
        edges = frozenset(pair for pair in pairs if rng.random() < 0.6)
        if edges:
            return OrderedGraph(m, edges)


def _random_subgraph(rng: np.random.Generator, host: OrderedGraph, keep: float) -> OrderedGraph:
    return host.subgraph(edge for edge in host.sorted_edges if rng.random() < keep)


def test_full_blow_up_of_an_edge():
    host, layout = blow_up(make_clique(2), 2)
    report = transversal_report(host, layout, Fraction(1), make_path(1))
    assert report.total_transversals == 4
    assert report.sum_of_induced_edges == 4
    assert report.identity_holds
    assert report.rich_count == 4
    assert report.rich_without_copy == 0
    assert report.crossing_copies == 4
    assert report.crossing_lower_bound == 4


def test_crossing_copies_of_a_path():
    host, layout = blow_up(make_path(2), 2)
    report = transversal_report(host, layout, Fraction(2), make_path(2))
    assert report.crossing_copies == 8
    assert report.rich_count == 8
    assert report.crossing_lower_bound == 8
    assert report.expected_sum == 2 * 8


def test_empty_subgraph():
    host, layout = blow_up(make_path(2), 2)
    report = transversal_report(OrderedGraph.empty(host.n), layout, Fraction(1), make_path(2))
    assert report.sum_of_induced_edges == 0
    assert report.rich_count == 0
    assert report.crossing_copies == 0
    assert report.identity_holds


def test_counting_identity_on_random_instances():
    rng = np.random.default_rng(12)
    for _ in range(60):
        m, t = int(rng.integers(2, 5)), int(rng.integers(1, 5))
        host, layout = blow_up(_random_base(rng, m), t)
        sub = _random_subgraph(rng, host, float(rng.random()))
        report = transversal_report(sub, layout, Fraction(1), make_path(1))
        assert report.identity_holds, (m, t)
        assert report.total_transversals == t**m


def test_dense_subgraphs_have_many_rich_transversals():
    rng = np.random.default_rng(21)
    eps = Fraction(1, 20)
    pattern = make_path(2)
    checked = 0
    for _ in range(40):
        m, t = int(rng.integers(3, 5)), int(rng.integers(2, 4))
        base = _random_base(rng, m)
        rho = rho_hat(base, pattern)
        host, layout = blow_up(base, t)
        sub = _random_subgraph(rng, host, 0.9)
        report = transversal_report(sub, layout, default_rich_threshold(rho, eps, base), pattern)
        # more than ρ̂ e(G) edges on a transversal always force a copy of F
        assert report.rich_without_copy == 0
        if sub.e >= (rho + 2 * eps) * host.e:
            checked += 1
            assert report.rich_fraction_at_least(eps)
    assert checked > 0


def test_default_rich_threshold():
    assert default_rich_threshold(Fraction(1, 2), Fraction(1, 10), make_path(2)) == Fraction(6, 5)


def test_preconditions():
    host, layout = blow_up(make_path(2), 2)
    with pytest.raises(SizeCapError):
        transversal_report(host, layout, Fraction(1), make_path(2), replace(Settings(), transversal_cap=4))
    with pytest.raises(PreconditionError):
        transversal_report(make_clique(host.n), layout, Fraction(1), make_path(2))


def test_blowup_audit_monotonicity_cases_are_clean():
    report = commands.cmd_blowup_audit("K2", "K2", subgraphs=0, cases=60, settings=Settings())
    assert report.summary["monotonicity_cases"] == 60
    assert report.summary["failures"] == 0


def test_blowup_audit_catches_containment_search_disagreeing_with_enumeration(monkeypatch):
    monkeypatch.setattr(commands, "contains", lambda host, pattern: None)
    with pytest.raises(SuiteViolation) as excinfo:
        commands.cmd_blowup_audit("K2", "K2", subgraphs=0, cases=60, settings=Settings())
    assert "containment_mismatch" in excinfo.value.witness["monotonicity"]
    assert excinfo.value.report.summary["failures"] == 1
