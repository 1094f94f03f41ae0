"""Tests for discrepancy certification of bipartite blocks."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from ordered_turan.config.settings import Settings
from ordered_turan.construction.bipartite import build_bipartite_attempt, sample_block
from ordered_turan.construction.certify import (
    biadjacency,
    certify_discrepancy,
    discrepancy_tolerance,
    operator_norm_bound,
)
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.errors import CertificationError, PreconditionError, SizeCapError


def _adversarial_block() -> OrderedGraph:
    # the right number of edges for m=16, d=2, all leaving the bottom quarter
    edges = {(u, v) for u in range(1, 5) for v in range(9, 17)}
    return OrderedGraph(16, frozenset(edges))


def _complete_block(m: int) -> OrderedGraph:
    half = m // 2
    return OrderedGraph(m, frozenset((u, v) for u in range(1, half + 1) for v in range(half + 1, m + 1)))


def test_tolerance_formula():
    assert discrepancy_tolerance(16, 2, Fraction(1), 2) == 8
    assert discrepancy_tolerance(8, 1, Fraction(1, 2), 4) == 1


def test_complete_block_has_no_discrepancy():
    certificate = certify_discrepancy(_complete_block(8), 1, Fraction(1, 10), 2)
    assert certificate.method == "exhaustive"
    assert certificate.worst_observed == 0
    assert certificate.passed


def test_adversarial_block_fails_with_witness():
    certificate = certify_discrepancy(_adversarial_block(), 2, Fraction(1), 2, mode="exhaustive")
    assert not certificate.passed
    assert certificate.worst_observed == 16
    assert certificate.tolerance == 8
    assert certificate.detail["witness"] == {
        "x": [1, 2, 3, 4],
        "y": list(range(9, 17)),
        "sign": "excess",
    }


def test_spectral_bound_dominates_exhaustive_worst():
    block = _adversarial_block()
    exhaustive = certify_discrepancy(block, 2, Fraction(1), 2, mode="exhaustive")
    spectral = certify_discrepancy(block, 2, Fraction(1), 2, mode="spectral")
    assert spectral.worst_observed >= exhaustive.worst_observed
    assert not spectral.passed

    for seed in range(5):
        random_block = sample_block(16, 2, seed)
        worst = certify_discrepancy(random_block, 2, Fraction(1), 2, mode="exhaustive").worst_observed
        bound = certify_discrepancy(random_block, 2, Fraction(1), 2, mode="spectral").worst_observed
        assert bound >= worst


def test_sampled_never_exceeds_exhaustive():
    settings = replace(Settings(), sampled_pairs=200)
    for seed in range(5):
        block = sample_block(16, 2, seed)
        sampled = certify_discrepancy(block, 2, Fraction(1), 2, mode="sampled", settings=settings, seed=seed)
        exhaustive = certify_discrepancy(block, 2, Fraction(1), 2, mode="exhaustive")
        assert sampled.evidence_only
        assert sampled.worst_observed <= exhaustive.worst_observed


def test_operator_norm_of_rank_one_matrix():
    centered = np.full((4, 4), 0.5)
    centered[2:] = -0.5
    sigma, detail = operator_norm_bound(centered, 1e-10, 100)
    assert sigma == pytest.approx(2.0)
    assert sigma >= 2.0
    assert detail["converged"]


def test_auto_mode_switches_to_spectral_above_cap():
    settings = replace(Settings(), exhaustive_max_half=2)
    certificate = certify_discrepancy(_complete_block(8), 1, Fraction(1), 2, settings=settings)
    assert certificate.method == "spectral"
    with pytest.raises(SizeCapError):
        certify_discrepancy(_complete_block(8), 1, Fraction(1), 2, mode="exhaustive", settings=settings)


def test_certification_preconditions():
    with pytest.raises(PreconditionError):
        certify_discrepancy(_complete_block(8), 1, Fraction(1), 2, mode="bogus")
    with pytest.raises(PreconditionError):
        certify_discrepancy(_complete_block(8), 0, Fraction(1), 2)
    with pytest.raises(PreconditionError):
        biadjacency(OrderedGraph(4, frozenset({(1, 2)})))


def test_retries_exhausted():
    settings = replace(Settings(), certify_retries=2)
    with pytest.raises(CertificationError) as excinfo:
        build_bipartite_attempt(16, 2, Fraction(1, 100), 2, seed=0, settings=settings)
    assert excinfo.value.exit_code == 3
    assert excinfo.value.witness["size"] == 16

    attempt = build_bipartite_attempt(16, 2, Fraction(1, 100), 2, seed=0, settings=settings, strict=False)
    assert attempt.attempts == 2
    assert not attempt.certificate.passed
    assert attempt.graph.e == 32
