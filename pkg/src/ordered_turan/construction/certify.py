"""Discrepancy certificates for quasirandom bipartite blocks.

A block on [m] joins the left half [h] (h = m/2) to the right half (h, m] with
density p = 2^{1-d}. It passes when every X in the left half and Y in the right
half satisfy

    |e(X, Y) - |X||Y| / 2^{d-1}| <= eps m² / (k 2^{d+2}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Optional

import numpy as np
from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.core.graph import OrderedGraph
from ordered_turan.core.io import format_rational
from ordered_turan.errors import PreconditionError, SizeCapError

logger = get_logger(__name__)

CertifyMode = Literal["auto", "exhaustive", "sampled", "spectral"]
CERTIFY_MODES = ("auto", "exhaustive", "sampled", "spectral")


@dataclass(frozen=True)
class QuasirandomCertificate:
    """Outcome of one discrepancy check.

    ``passed`` is a proof for the exhaustive and spectral methods and only
    evidence for the sampled one.
    """

    method: str
    tolerance: Fraction
    worst_observed: Fraction
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def evidence_only(self) -> bool:
        return self.method == "sampled"

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "tolerance": format_rational(self.tolerance),
            "worst_observed": format_rational(self.worst_observed),
            "pass": self.passed,
            "evidence_only": self.evidence_only,
            "detail": self.detail,
        }


def discrepancy_tolerance(m: int, d: int, eps: Fraction, k: int) -> Fraction:
    """eps m² / (k 2^{d+2}), taken with the block's own size m."""
    return Fraction(eps) * m * m / (k * 2 ** (d + 2))


def biadjacency(block: OrderedGraph) -> np.ndarray:
    """h x h 0/1 matrix: rows are left vertices 1..h, columns right vertices h+1..2h."""
    if block.n % 2:
        raise PreconditionError(f"bipartite block needs an even vertex count, got {block.n}")
    half = block.n // 2
    matrix = np.zeros((half, half), dtype=np.int64)
    for u, v in block.edges:
        if not (u <= half < v):
            raise PreconditionError(f"edge ({u}, {v}) does not join the two halves of [{block.n}]")
        matrix[u - 1, v - half - 1] = 1
    return matrix


def _exhaustive(matrix: np.ndarray, d: int) -> tuple[Fraction, dict[str, Any]]:
    # For a fixed X the worst Y is the set of right vertices whose deviation has
    # the sign being maximised, so scanning every X covers every (X, Y) pair.
    half = matrix.shape[0]
    scale = 2 ** (d - 1)
    masks = np.arange(1 << half, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(half, dtype=np.int64)) & 1
    counts = bits @ matrix
    sizes = bits.sum(axis=1)
    deviation = scale * counts - sizes[:, None]
    excess = np.clip(deviation, 0, None).sum(axis=1)
    deficit = np.clip(-deviation, 0, None).sum(axis=1)

    i_excess, i_deficit = int(np.argmax(excess)), int(np.argmax(deficit))
    if excess[i_excess] >= deficit[i_deficit]:
        row, sign, worst_scaled = i_excess, 1, int(excess[i_excess])
    else:
        row, sign, worst_scaled = i_deficit, -1, int(deficit[i_deficit])

    x_set = [i + 1 for i in range(half) if bits[row, i]]
    y_set = [half + j + 1 for j in range(half) if sign * deviation[row, j] > 0]
    detail = {
        "pairs": (1 << half) * (1 << half),
        "witness": {"x": x_set, "y": y_set, "sign": "excess" if sign > 0 else "deficit"},
    }
    return Fraction(worst_scaled, scale), detail


def _sampled(matrix: np.ndarray, d: int, samples: int, seed: int) -> tuple[Fraction, dict[str, Any]]:
    half = matrix.shape[0]
    scale = 2 ** (d - 1)
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, 2, size=(samples, half), dtype=np.int64)
    ys = rng.integers(0, 2, size=(samples, half), dtype=np.int64)
    edges = ((xs @ matrix) * ys).sum(axis=1)
    deviation = np.abs(scale * edges - xs.sum(axis=1) * ys.sum(axis=1))
    worst = int(deviation.max()) if samples else 0
    return Fraction(worst, scale), {"samples": samples, "seed": seed}


def operator_norm_bound(
    centered: np.ndarray, tol: float, max_iter: int
) -> tuple[float, dict[str, Any]]:
    """Upper estimate of the largest singular value by power iteration on CᵀC.

    The start vector is fixed; the returned bound is sqrt(λ + residual), so an
    unconverged iteration inflates rather than understates it.
    """
    size = centered.shape[1]
    if not np.any(centered):
        return 0.0, {"iterations": 0, "residual": 0.0, "converged": True}

    rng = np.random.default_rng(0)
    x = rng.standard_normal(size)
    x /= np.linalg.norm(x)
    lam, residual, iterations = 0.0, float("inf"), 0
    for iterations in range(1, max_iter + 1):
        z = centered.T @ (centered @ x)
        lam = float(x @ z)
        residual = float(np.linalg.norm(z - lam * x))
        if residual < tol:
            break
        z_norm = float(np.linalg.norm(z))
        if z_norm == 0.0:
            break
        x = z / z_norm
    sigma = math.sqrt(max(lam + residual, 0.0)) * (1 + 1e-12)
    return sigma, {
        "iterations": iterations,
        "residual": residual,
        "converged": residual < tol,
    }


def _spectral(matrix: np.ndarray, d: int, settings: Settings) -> tuple[Fraction, dict[str, Any]]:
    # |e(X, Y) - p|X||Y|| = |1_X^T (A - pJ) 1_Y| <= ||A - pJ|| sqrt(|X||Y|) <= ||A - pJ|| h
    half = matrix.shape[0]
    centered = matrix.astype(float) - 1.0 / 2 ** (d - 1)
    sigma, detail = operator_norm_bound(centered, settings.power_tol, settings.power_max_iter)
    detail["operator_norm_bound"] = repr(sigma)
    return Fraction(sigma) * half, detail


def certify_discrepancy(
    block: OrderedGraph,
    d: int,
    eps: Fraction,
    k: int,
    mode: CertifyMode = "auto",
    settings: Optional[Settings] = None,
    seed: int = 0,
) -> QuasirandomCertificate:
    """Check the discrepancy condition for ``block`` at depth parameter ``d``."""
    settings = settings or get_settings()
    if d < 1:
        raise PreconditionError(f"blocks exist only for d >= 1, got {d}")
    if mode not in CERTIFY_MODES:
        raise PreconditionError(f"unknown certification mode {mode!r}")

    matrix = biadjacency(block)
    half = matrix.shape[0]
    tolerance = discrepancy_tolerance(block.n, d, Fraction(eps), k)

    if mode == "auto":
        mode = "exhaustive" if half <= settings.exhaustive_max_half else "spectral"
    if mode == "exhaustive":
        if half > settings.exhaustive_max_half:
            raise SizeCapError(
                f"exhaustive certification is limited to half-size "
                f"{settings.exhaustive_max_half}, got {half}"
            )
        worst, detail = _exhaustive(matrix, d)
    elif mode == "sampled":
        worst, detail = _sampled(matrix, d, settings.sampled_pairs, seed)
    else:
        worst, detail = _spectral(matrix, d, settings)

    certificate = QuasirandomCertificate(
        method=mode,
        tolerance=tolerance,
        worst_observed=worst,
        passed=worst <= tolerance,
        detail=detail,
    )
    logger.debug(
        "Block discrepancy checked",
        method=mode,
        size=block.n,
        d=d,
        worst=float(worst),
        tolerance=float(tolerance),
        passed=certificate.passed,
    )
    return certificate
