"""Graph file plus JSON certificate sidecar for constructed graphs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from ordered_turan.construction.recursive import ConstructedGraph
from ordered_turan.core.io import write_graph


def sidecar_dict(constructed: ConstructedGraph) -> dict[str, Any]:
    return {
        "params": constructed.params.to_dict(),
        "edges": constructed.graph.e,
        "certified": constructed.certified,
        "blocks": [block.to_dict() for block in constructed.blocks],
        "seed_trail": [
            {"path": path, "seed": seed, "attempts": attempts}
            for path, seed, attempts in constructed.seed_trail
        ],
    }


def sidecar_path_for(graph_path: Union[str, Path]) -> Path:
    graph_path = Path(graph_path)
    return graph_path.with_name(graph_path.name + ".cert.json")


def write_constructed(
    constructed: ConstructedGraph, graph_path: Union[str, Path]
) -> tuple[Path, Path]:
    """Write ``graph_path`` and ``<graph_path>.cert.json``."""
    graph_path = write_graph(constructed.graph, graph_path)
    sidecar = sidecar_path_for(graph_path)
    sidecar.write_text(
        json.dumps(sidecar_dict(constructed), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return graph_path, sidecar
