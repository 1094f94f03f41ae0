"""Random bipartite blocks B_ε(m, d) with an exact edge count."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.construction.certify import (
    CertifyMode,
    QuasirandomCertificate,
    certify_discrepancy,
)
from ordered_turan.construction.seeds import derive_seed
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.errors import CertificationError, PreconditionError

logger = get_logger(__name__)


@dataclass(frozen=True)
class BlockAttempt:
    graph: OrderedGraph
    certificate: QuasirandomCertificate
    seed: int
    attempts: int


def block_edge_count(m: int, d: int) -> int:
    """m² / 2^{d+1}; rejects non-integral counts and odd m."""
    if m < 2 or m % 2:
        raise PreconditionError(f"block size must be even and positive, got {m}")
    if d < 1:
        raise PreconditionError(f"blocks exist only for d >= 1, got {d}")
    count, remainder = divmod(m * m, 2 ** (d + 1))
    if remainder:
        raise PreconditionError(f"m²/2^(d+1) is not an integer for m={m}, d={d}")
    return count


def sample_block(m: int, d: int, seed: int) -> OrderedGraph:
    """Uniform bipartite graph between [m/2] and (m/2, m] with m²/2^{d+1} edges."""
    count = block_edge_count(m, d)
    half = m // 2
    rng = np.random.default_rng(seed)
    cells = np.sort(rng.choice(half * half, size=count, replace=False))
    edges = frozenset((int(c) // half + 1, half + int(c) % half + 1) for c in cells)
    return OrderedGraph(m, edges)


def build_bipartite_attempt(
    m: int,
    d: int,
    eps: Fraction,
    k: int,
    seed: int,
    mode: CertifyMode = "auto",
    settings: Optional[Settings] = None,
    strict: bool = True,
) -> BlockAttempt:
    """Sample and certify, resampling up to ``settings.certify_retries`` times.

    Attempt a uses ``derive_seed(seed, "attempt", a)``. In non-strict mode the
    attempt with the smallest observed discrepancy is returned uncertified.
    """
    settings = settings or get_settings()
    block_edge_count(m, d)

    best: Optional[BlockAttempt] = None
    for attempt in range(settings.certify_retries):
        attempt_seed = derive_seed(seed, "attempt", attempt)
        graph = sample_block(m, d, attempt_seed)
        certificate = certify_discrepancy(
            graph, d, eps, k, mode=mode, settings=settings, seed=derive_seed(attempt_seed, "sample")
        )
        candidate = BlockAttempt(graph, certificate, attempt_seed, attempt + 1)
        if certificate.passed:
            logger.debug("Block certified", size=m, d=d, attempts=attempt + 1, method=certificate.method)
            return candidate
        if best is None or certificate.worst_observed < best.certificate.worst_observed:
            best = candidate

    assert best is not None
    if strict:
        raise CertificationError(
            f"no block of size {m} at d={d} passed {best.certificate.method} certification "
            f"after {settings.certify_retries} attempts; m may be too small for eps={eps}, k={k}",
            witness={
                "size": m,
                "d": d,
                "best_worst_observed": str(best.certificate.worst_observed),
                "tolerance": str(best.certificate.tolerance),
            },
        )
    logger.warning(
        "Keeping uncertified block",
        size=m,
        d=d,
        attempts=settings.certify_retries,
        worst=float(best.certificate.worst_observed),
        tolerance=float(best.certificate.tolerance),
    )
    return BlockAttempt(best.graph, best.certificate, best.seed, settings.certify_retries)


def build_bipartite(
    m: int,
    d: int,
    eps: Fraction,
    k: int,
    seed: int,
    mode: CertifyMode = "auto",
    settings: Optional[Settings] = None,
) -> tuple[OrderedGraph, QuasirandomCertificate]:
    """Certified block B_ε(m, d); raises CertificationError when retries run out."""
    attempt = build_bipartite_attempt(m, d, eps, k, seed, mode=mode, settings=settings)
    return attempt.graph, attempt.certificate
