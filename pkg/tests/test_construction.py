"""Tests for G_ε(n, d): edge counts, determinism, certificates and sidecars."""

from __future__ import annotations

import json
from dataclasses import replace
from fractions import Fraction

import pytest

from ordered_turan.config.settings import Settings
from ordered_turan.construction.bipartite import block_edge_count, sample_block
from ordered_turan.construction.recursive import (
    ConstructionParams,
    build_g,
    edge_count_formula,
)
from ordered_turan.construction.seeds import SEED_MASK, derive_seed
from ordered_turan.construction.sidecar import sidecar_path_for, write_constructed
from ordered_turan.core.io import read_graph
from ordered_turan.errors import PreconditionError


def _fast_settings() -> Settings:
    return replace(Settings(), certify_retries=1, sampled_pairs=16)


def _params(n: int, d: int, seed: int = 0) -> ConstructionParams:
    return ConstructionParams(eps=Fraction(1), d=d, k=2, n=n, seed=seed)


@pytest.mark.parametrize("d", range(1, 6))
@pytest.mark.parametrize("m", range(1, 9))
def test_edge_count_formula_holds_for_built_graphs(d, m):
    n = m * 2**d
    constructed = build_g(_params(n, d, seed=m), _fast_settings(), strict=False, mode="sampled")
    assert constructed.graph.e == d * n * n // 2 ** (d + 1)
    assert constructed.graph.e == edge_count_formula(n, d)
    assert len(constructed.blocks) == 2**d - 1


def test_depth_zero_is_edgeless():
    constructed = build_g(_params(8, 0))
    assert constructed.graph.e == 0
    assert constructed.blocks == ()
    assert constructed.certified


def test_divisibility_is_a_precondition():
    with pytest.raises(PreconditionError) as excinfo:
        _params(12, 2)
    assert excinfo.value.reason == "divisibility"
    assert excinfo.value.exit_code == 2


@pytest.mark.parametrize(
    "kwargs",
    [
        {"eps": Fraction(0)},
        {"eps": Fraction(3, 2)},
        {"k": 1},
        {"d": -1},
        {"seed": -1},
    ],
)
def test_parameter_ranges(kwargs):
    base = {"eps": Fraction(1), "d": 1, "k": 2, "n": 8, "seed": 0}
    with pytest.raises(PreconditionError):
        ConstructionParams(**{**base, **kwargs})


def test_depth_one_block_is_complete_bipartite():
    constructed = build_g(_params(8, 1))
    expected = {(u, v) for u in range(1, 5) for v in range(5, 9)}
    assert constructed.graph.edges == frozenset(expected)
    assert constructed.certified


def test_block_layout_and_seed_trail():
    constructed = build_g(_params(16, 2, seed=7))
    assert [(b.path, b.offset, b.size, b.d) for b in constructed.blocks] == [
        ("", 0, 16, 2),
        ("0", 0, 8, 1),
        ("1", 8, 8, 1),
    ]
    assert [path for path, _, _ in constructed.seed_trail] == ["", "0", "1"]
    assert constructed.blocks[0].seed == derive_seed(7, "node", "")


def test_certified_at_desk_scale():
    constructed = build_g(_params(16, 2))
    assert constructed.certified
    assert all(b.certificate.method == "exhaustive" for b in constructed.blocks)


def test_build_is_deterministic_in_the_seed():
    first = build_g(_params(32, 2, seed=3), _fast_settings(), strict=False, mode="sampled")
    second = build_g(_params(32, 2, seed=3), _fast_settings(), strict=False, mode="sampled")
    other = build_g(_params(32, 2, seed=4), _fast_settings(), strict=False, mode="sampled")
    assert first.graph == second.graph
    assert first.seed_trail == second.seed_trail
    assert first.graph != other.graph


def test_sampled_blocks_do_not_count_as_certified():
    constructed = build_g(_params(16, 2), strict=False, mode="sampled")
    assert not constructed.certified


def test_block_edge_count_preconditions():
    assert block_edge_count(16, 2) == 32
    with pytest.raises(PreconditionError):
        block_edge_count(6, 2)
    with pytest.raises(PreconditionError):
        block_edge_count(7, 1)


def test_sample_block_crosses_halves():
    block = sample_block(16, 3, seed=1)
    assert block.e == 16
    assert all(u <= 8 < v for u, v in block.edges)
    assert sample_block(16, 3, seed=1) == block


def test_derive_seed():
    assert derive_seed(1, "node", "0") == derive_seed(1, "node", "0")
    assert derive_seed(1, "node", "0") != derive_seed(1, "node", "1")
    assert 0 <= derive_seed(2**70, "x") <= SEED_MASK


def test_sidecar_round_trip(tmp_path):
    constructed = build_g(_params(16, 2, seed=7))
    graph_path, sidecar = write_constructed(constructed, tmp_path / "g.ordgraph")

    assert sidecar == sidecar_path_for(graph_path)
    assert sidecar.name == "g.ordgraph.cert.json"
    assert read_graph(graph_path) == constructed.graph

    payload = json.loads(sidecar.read_text())
    assert payload["params"] == {"eps": "1/1", "d": 2, "k": 2, "n": 16, "seed": 7}
    assert payload["edges"] == 64
    assert payload["certified"] is True
    assert [block["path"] for block in payload["blocks"]] == ["", "0", "1"]
    assert payload["blocks"][0]["certificate"]["pass"] is True
