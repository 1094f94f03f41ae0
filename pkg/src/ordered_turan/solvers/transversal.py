"""Transversals of a blow-up and the supersaturation counts built on them.

For H' ⊆ G(t) with classes I_1..I_m, every edge of H' joins two classes and lies
in exactly t^{m-2} transversals, so Σ_T e_{H'}(T) = t^{m-2} e(H').
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Optional

from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.core.embedding import contains, iter_embeddings
from ordered_turan.core.graph import BlowupLayout, OrderedGraph, blow_up
from ordered_turan.core.io import format_rational
from ordered_turan.errors import PreconditionError, SizeCapError

logger = get_logger(__name__)


@dataclass(frozen=True)
class TransversalReport:
    classes: tuple[tuple[int, ...], ...]
    total_transversals: int
    sum_of_induced_edges: int
    expected_sum: Fraction
    rich_threshold: Fraction
    rich_count: int
    rich_without_copy: int
    crossing_copies: int
    crossing_lower_bound: Fraction

    @property
    def t(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def identity_holds(self) -> bool:
        return self.sum_of_induced_edges == self.expected_sum

    def rich_fraction_at_least(self, eps: Fraction) -> bool:
        return self.rich_count >= Fraction(eps) * self.total_transversals

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "t": self.t,
            "total_transversals": self.total_transversals,
            "sum_of_induced_edges": self.sum_of_induced_edges,
            "expected_sum": format_rational(self.expected_sum),
            "identity_holds": self.identity_holds,
            "rich_threshold": format_rational(self.rich_threshold),
            "rich_count": self.rich_count,
            "rich_without_copy": self.rich_without_copy,
            "crossing_copies": self.crossing_copies,
            "crossing_lower_bound": format_rational(self.crossing_lower_bound),
        }


def default_rich_threshold(rho: Fraction, eps: Fraction, base: OrderedGraph) -> Fraction:
    """(ρ̂ + ε) e(G)."""
    return (Fraction(rho) + Fraction(eps)) * base.e


def transversal_report(
    sub: OrderedGraph,
    layout: BlowupLayout,
    rich_threshold: Fraction,
    pattern: OrderedGraph,
    settings: Optional[Settings] = None,
) -> TransversalReport:
    """Enumerate every transversal of ``layout`` and count against ``sub``.

    A transversal is rich when it induces at least ``rich_threshold`` edges. A
    crossing copy of ``pattern`` meets each class at most once and lies in exactly
    t^{m-v(F)} transversals; dividing the rich transversals that hold a copy by
    that count gives ``crossing_lower_bound``.
    """
    settings = settings or get_settings()
    t, m = layout.t, layout.m
    if t**m > settings.transversal_cap:
        raise SizeCapError(f"t^m = {t ** m} transversals exceed the cap {settings.transversal_cap}")
    host, _ = blow_up(layout.base, t)
    if not sub.is_subgraph_of(host):
        raise PreconditionError("H' must be a subgraph of the blow-up described by the layout")

    threshold = Fraction(rich_threshold)
    base_edges = layout.base.sorted_edges
    total = induced_sum = rich = rich_without_copy = 0
    for chosen in product(*layout.intervals):
        induced = [
            (x, y) for x, y in base_edges if (chosen[x - 1], chosen[y - 1]) in sub.edges
        ]
        total += 1
        induced_sum += len(induced)
        if len(induced) >= threshold:
            rich += 1
            if contains(OrderedGraph(m, frozenset(induced)), pattern) is None:
                rich_without_copy += 1

    crossing = sum(
        1
        for emb in iter_embeddings(sub, pattern)
        if len({layout.class_of(v) for v in emb.mapping}) == pattern.n
    )
    if pattern.n <= m:
        lower = Fraction(rich - rich_without_copy, t ** (m - pattern.n))
    else:
        lower = Fraction(0)

    report = TransversalReport(
        classes=layout.intervals,
        total_transversals=total,
        sum_of_induced_edges=induced_sum,
        expected_sum=Fraction(t) ** (m - 2) * sub.e,
        rich_threshold=threshold,
        rich_count=rich,
        rich_without_copy=rich_without_copy,
        crossing_copies=crossing,
        crossing_lower_bound=lower,
    )
    logger.debug(
        "Transversals enumerated",
        m=m,
        t=t,
        total=total,
        induced_sum=induced_sum,
        rich=rich,
        crossing=crossing,
    )
    return report
