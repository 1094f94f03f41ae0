"""Ordered graphs: model, containment, parameters and text format."""

from ordered_turan.core.embedding import (
    OrderedEmbedding,
    brute_force_embeddings,
    contains,
    iter_embeddings,
)
from ordered_turan.core.graph import (
    BlowupLayout,
    Edge,
    OrderedGraph,
    blow_up,
    is_monotone_path,
    make_clique,
    make_cycle,
    make_path,
    parse_pattern,
)
from ordered_turan.core.io import (
    dumps_graph,
    format_rational,
    loads_graph,
    parse_rational,
    read_graph,
    write_graph,
)
from ordered_turan.core.parameters import (
    TuranParameters,
    ascending_levels,
    brute_force_interval_chromatic,
    chromatic,
    interval_chromatic,
    longest_monotone_path_len,
    turan_parameters,
)

__all__ = [
    "BlowupLayout",
    "Edge",
    "OrderedEmbedding",
    "OrderedGraph",
    "TuranParameters",
    "ascending_levels",
    "blow_up",
    "brute_force_embeddings",
    "brute_force_interval_chromatic",
    "chromatic",
    "contains",
    "dumps_graph",
    "format_rational",
    "interval_chromatic",
    "is_monotone_path",
    "iter_embeddings",
    "loads_graph",
    "longest_monotone_path_len",
    "make_clique",
    "make_cycle",
    "make_path",
    "parse_pattern",
    "parse_rational",
    "read_graph",
    "turan_parameters",
    "write_graph",
]
