"""Exact-rational simplex function h_d and the inequalities built on it.

    h_d(alpha) = (d + 2)(1 - |alpha|^2) + k * H_d,    H_d = 1 + 1/2 + ... + 1/d

All values are ``Fraction``s; no floating point enters any comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np
from structlog import get_logger

from ordered_turan.errors import PreconditionError

logger = get_logger(__name__)

_HARMONIC: list[Fraction] = [Fraction(0)]


def harmonic(d: int) -> Fraction:
    """Exact partial harmonic sum H_d (H_0 = 0), memoised incrementally."""
    if d < 0:
        raise PreconditionError(f"harmonic index must be nonnegative, got {d}")
    while len(_HARMONIC) <= d:
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, len(_HARMONIC)))
    return _HARMONIC[d]


@dataclass(frozen=True)
class SimplexVector:
    """Point of the standard simplex Δ_k with exact coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise PreconditionError("simplex vector needs at least one coordinate")
        if any(c < 0 or c > 1 for c in coords):
            raise PreconditionError(f"simplex coordinates must lie in [0, 1]: {coords}")
        if sum(coords) != 1:
            raise PreconditionError(f"simplex coordinates must sum to 1, got {sum(coords)}")

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "SimplexVector":
        counts = [int(c) for c in counts]
        total = sum(counts)
        if total <= 0:
            raise PreconditionError("counts must have a positive sum")
        return cls(tuple(Fraction(c, total) for c in counts))

    @classmethod
    def uniform(cls, k: int) -> "SimplexVector":
        return cls(tuple(Fraction(1, k) for _ in range(k)))

    @property
    def k(self) -> int:
        return len(self.coords)

    @property
    def norm_sq(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class BoundReport:
    """lhs <= rhs, evaluated exactly."""

    lhs: Fraction
    rhs: Fraction
    note: str = ""

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= 0


def random_simplex(rng: np.random.Generator, k: int, draw_max: int = 1000) -> SimplexVector:
    """k integers uniform in [0, draw_max], renormalised; all-zero draws are redrawn."""
    while True:
        draws = rng.integers(0, draw_max + 1, size=k)
        if draws.sum() > 0:
            return SimplexVector.from_counts(int(x) for x in draws)


def h(alpha: SimplexVector, d: int) -> Fraction:
    if d < 0:
        raise PreconditionError(f"depth must be nonnegative, got {d}")
    return (d + 2) * (1 - alpha.norm_sq) + alpha.k * harmonic(d)


def cross_sum(beta: Sequence[Fraction], gamma: Sequence[Fraction]) -> Fraction:
    """Σ_{i<j} β_i γ_j via a running prefix of β."""
    total = Fraction(0)
    prefix = Fraction(0)
    for b, g in zip(beta, gamma):
        total += prefix * g
        prefix += b
    return total


def midpoint(beta: SimplexVector, gamma: SimplexVector) -> SimplexVector:
    return SimplexVector(tuple((b + g) / 2 for b, g in zip(beta.coords, gamma.coords)))


def check_recursion(
    beta: SimplexVector,
    gamma: SimplexVector,
    d: int,
    h_fn: Callable[[SimplexVector, int], Fraction] = h,
) -> BoundReport:
    """h_{d-1}(β) + h_{d-1}(γ) + 4 Σ_{i<j} β_i γ_j <= 2 h_d(α) with α = (β + γ)/2.

    The inequality is a theorem, so a failing report points at a bug in ``h_fn``.
    """
    if d < 1:
        raise PreconditionError(f"recursion step needs d >= 1, got {d}")
    if beta.k != gamma.k:
        raise PreconditionError(f"dimension mismatch: {beta.k} != {gamma.k}")
    alpha = midpoint(beta, gamma)
    lhs = h_fn(beta, d - 1) + h_fn(gamma, d - 1) + 4 * cross_sum(beta.coords, gamma.coords)
    rhs = 2 * h_fn(alpha, d)
    return BoundReport(lhs=lhs, rhs=rhs)


def parallelogram_gap(beta: SimplexVector, gamma: SimplexVector) -> Fraction:
    """|β|² + |γ|² - 2(|α|² + |η|²) with η = β - α; identically zero."""
    if beta.k != gamma.k:
        raise PreconditionError(f"dimension mismatch: {beta.k} != {gamma.k}")
    alpha = midpoint(beta, gamma)
    eta_sq = sum(((b - a) ** 2 for b, a in zip(beta.coords, alpha.coords)), Fraction(0))
    return beta.norm_sq + gamma.norm_sq - 2 * (alpha.norm_sq + eta_sq)


def depth_condition(eps: Fraction, k: int, d: int) -> BoundReport:
    """2 + k H_d <= eps d."""
    return BoundReport(lhs=2 + k * harmonic(d), rhs=Fraction(eps) * d)


def choose_depth(eps: Fraction, k: int) -> int:
    """Least d >= 1 with 2 + k H_d <= eps d, by a linear scan in exact arithmetic.

    eps d - 2 - k H_d has increments eps - k/(d+1), so it is convex in d and negative
    at d = 1; the first d that passes is where it stays nonnegative.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    if k < 2:
        raise PreconditionError(f"k must be at least 2, got {k}")

    d, h_d = 1, Fraction(1)
    while 2 + k * h_d > eps * d:
        d += 1
        h_d += Fraction(1, d)
    return d


def depth_table(eps: Fraction, k: int, extra: int = 2) -> list[dict]:
    """Rows d = 1 .. choose_depth(eps, k) + extra of the depth condition."""
    chosen = choose_depth(eps, k)
    rows = []
    for d in range(1, chosen + extra + 1):
        report = depth_condition(eps, k, d)
        rows.append(
            {"d": d, "lhs": report.lhs, "rhs": report.rhs, "holds": report.holds, "chosen": d == chosen}
        )
    return rows


def ratio_bound(alpha: SimplexVector, d: int, eps: Fraction) -> Fraction:
    """(h_d(α) + dε) / (2d): the edge fraction a leveling with proportions α can keep."""
    if d < 1:
        raise PreconditionError(f"ratio bound needs d >= 1, got {d}")
    return (h(alpha, d) + d * Fraction(eps)) / (2 * d)


def asymptotic_check(k: int, eps: Fraction, d: int) -> BoundReport:
    """Worst case |α|² = 1/k: d(k-1)/k + 2 + k H_d <= d((k-1)/k + eps).

    This reduces exactly to the depth condition; a failing report means d is below
    choose_depth(eps, k), and is flagged in the note rather than raised.
    """
    if d < 1:
        raise PreconditionError(f"asymptotic check needs d >= 1, got {d}")
    eps = Fraction(eps)
    base = Fraction(d * (k - 1), k)
    report = BoundReport(lhs=base + 2 + k * harmonic(d), rhs=d * (Fraction(k - 1, k) + eps))
    if not report.holds:
        logger.warning("Depth below asymptotic threshold", k=k, eps=str(eps), d=d)
        return BoundReport(lhs=report.lhs, rhs=report.rhs, note="precondition violated")
    return report


def partition_bound_rhs(alpha: SimplexVector, d: int, eps: Fraction, n: int) -> Fraction:
    """(h_d(α) + dε) n² / 2^{d+2}."""
    return (h(alpha, d) + d * Fraction(eps)) * n * n / 2 ** (d + 2)


def uniform_ratio_limit(k: int, eps: Fraction) -> Fraction:
    """(k-1)/(2k) + eps."""
    return Fraction(k - 1, 2 * k) + Fraction(eps)
