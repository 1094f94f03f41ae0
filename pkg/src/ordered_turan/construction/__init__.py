"""Recursive constructions G_ε(n, d) with certified quasirandom blocks."""

from ordered_turan.construction.bipartite import (
    BlockAttempt,
    block_edge_count,
    build_bipartite,
    build_bipartite_attempt,
    sample_block,
)
from ordered_turan.construction.certify import (
    CERTIFY_MODES,
    QuasirandomCertificate,
    biadjacency,
    certify_discrepancy,
    discrepancy_tolerance,
    operator_norm_bound,
)
from ordered_turan.construction.recursive import (
    BlockRecord,
    ConstructedGraph,
    ConstructionParams,
    ascending_cross_edges,
    build_g,
    edge_count_formula,
    partition_bound,
)
from ordered_turan.construction.seeds import derive_seed
from ordered_turan.construction.sidecar import sidecar_dict, sidecar_path_for, write_constructed

__all__ = [
    "CERTIFY_MODES",
    "BlockAttempt",
    "BlockRecord",
    "ConstructedGraph",
    "ConstructionParams",
    "QuasirandomCertificate",
    "ascending_cross_edges",
    "biadjacency",
    "block_edge_count",
    "build_bipartite",
    "build_bipartite_attempt",
    "build_g",
    "certify_discrepancy",
    "derive_seed",
    "discrepancy_tolerance",
    "edge_count_formula",
    "operator_norm_bound",
    "partition_bound",
    "sample_block",
    "sidecar_dict",
    "sidecar_path_for",
    "write_constructed",
]
