"""Command implementations behind the ``ordered-turan`` CLI.

Each ``cmd_*`` function validates its whole configuration before doing any
work and returns an ExperimentReport; the CLI only parses flags and prints.
"""

from __future__ import annotations

import asyncio
import time
from dataclasses import replace
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np
from structlog import get_logger

from ordered_turan.bounds.simplex import (
    SimplexVector,
    asymptotic_check,
    check_recursion,
    choose_depth,
    depth_table,
    h,
    harmonic,
    parallelogram_gap,
    random_simplex,
)
from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.construction.bipartite import build_bipartite_attempt
from ordered_turan.construction.certify import CertifyMode, certify_discrepancy
from ordered_turan.construction.recursive import (
    ConstructedGraph,
    ConstructionParams,
    build_g,
    partition_bound,
)
from ordered_turan.construction.seeds import derive_seed
from ordered_turan.construction.sidecar import write_constructed
from ordered_turan.core.embedding import brute_force_embeddings, contains, iter_embeddings
from ordered_turan.core.graph import OrderedGraph, blow_up, parse_pattern
from ordered_turan.core.io import format_rational, read_graph
from ordered_turan.core.parameters import longest_monotone_path_len, turan_parameters
from ordered_turan.errors import (
    CertificationError,
    PreconditionError,
    SizeCapError,
    SuiteViolation,
)
from ordered_turan.harness.engine import run_instances
from ordered_turan.harness.report import ExperimentConfig, ExperimentReport
from ordered_turan.solvers.exact import max_pkfree_exact
from ordered_turan.solvers.leveling import best_leveling_sampled
from ordered_turan.solvers.rho import solve_relative
from ordered_turan.solvers.transversal import default_rich_threshold, transversal_report
from ordered_turan.solvers.verify import verify_ratio_bound

logger = get_logger(__name__)

CHECK_SUITES = ("lemma", "parallelogram", "depth", "partition")
PARTITION_GRID = ((8, 1), (16, 2))


def load_pattern(source: Union[str, Path]) -> OrderedGraph:
    """A graph file path, or shorthand such as ``P3``, ``C5`` or ``K4``."""
    path = Path(source)
    if path.is_file():
        return read_graph(path)
    return parse_pattern(str(source))


def _finish(report: ExperimentReport, started: float) -> ExperimentReport:
    report.wall_clock = round(time.perf_counter() - started, 6)
    return report


def _vector(v: SimplexVector) -> list[str]:
    return [format_rational(c) for c in v.coords]


# build / certify


def cmd_build(
    params: ConstructionParams,
    out: Union[str, Path],
    *,
    strict: bool = True,
    mode: CertifyMode = "auto",
    settings: Optional[Settings] = None,
) -> ExperimentReport:
    started = time.perf_counter()
    config = ExperimentConfig(
        "build", {**params.to_dict(), "out": str(out), "strict": strict, "mode": mode}
    )
    constructed = build_g(params, settings, strict=strict, mode=mode)
    graph_path, sidecar = write_constructed(constructed, out)
    row = {
        **params.to_dict(),
        "edges": constructed.graph.e,
        "blocks": len(constructed.blocks),
        "certified": constructed.certified,
        "graph": str(graph_path),
        "sidecar": str(sidecar),
    }
    return _finish(ExperimentReport(config, [row]), started)


def cmd_certify(
    *,
    d: int,
    eps: Fraction,
    k: int,
    graph_path: Optional[Union[str, Path]] = None,
    n: Optional[int] = None,
    seed: int = 0,
    mode: CertifyMode = "auto",
    settings: Optional[Settings] = None,
) -> ExperimentReport:
    """Certify a block read from ``graph_path``, or sample B_ε(n, d) and certify it."""
    started = time.perf_counter()
    settings = settings or get_settings()
    if (graph_path is None) == (n is None):
        raise PreconditionError("certify needs exactly one of a block file or a block size n")
    config = ExperimentConfig(
        "certify",
        {
            "d": d,
            "eps": Fraction(eps),
            "k": k,
            "graph": str(graph_path) if graph_path else None,
            "n": n,
            "seed": seed,
            "mode": mode,
        },
    )
    if graph_path is not None:
        block = read_graph(graph_path)
        certificate = certify_discrepancy(block, d, eps, k, mode=mode, settings=settings, seed=seed)
        if not certificate.passed:
            raise CertificationError(
                f"block {graph_path} fails the discrepancy condition", witness=certificate.to_dict()
            )
        row = {"edges": block.e, "attempts": 1, "seed": seed, **certificate.to_dict()}
    else:
        assert n is not None
        attempt = build_bipartite_attempt(n, d, eps, k, seed, mode=mode, settings=settings)
        row = {
            "edges": attempt.graph.e,
            "attempts": attempt.attempts,
            "seed": attempt.seed,
            **attempt.certificate.to_dict(),
        }
    return _finish(ExperimentReport(config, [row]), started)


# converge


def _certificates_summary(constructed: ConstructedGraph) -> dict[str, Any]:
    certs = [block.certificate for block in constructed.blocks]
    return {
        "blocks": len(certs),
        "passed": sum(1 for c in certs if c.passed),
        "methods": sorted({c.method for c in certs}),
        "max_attempts": max((block.attempts for block in constructed.blocks), default=0),
    }


def converge_instance(
    k: int,
    eps: Fraction,
    n: int,
    d: int,
    seed: int,
    trials: int,
    budget: Optional[int],
    mode: CertifyMode,
    settings: Settings,
) -> dict[str, Any]:
    """One sandwich row: leveling witness <= exact optimum, against both bounds."""
    constructed = build_g(
        ConstructionParams(eps=eps, d=d, k=k, n=n, seed=seed), settings, strict=False, mode=mode
    )
    graph = constructed.graph
    lower = best_leveling_sampled(graph, k, trials, derive_seed(seed, "leveling", n, d))
    exact = max_pkfree_exact(graph, k, budget=budget, settings=settings)
    bound = verify_ratio_bound(constructed, exact.subgraph(graph), k)
    if not asymptotic_check(k, eps, d).holds:
        status = "pre-asymptotic"
    else:
        status = "holds" if bound.holds else "violated"
    return {
        "n": n,
        "d": d,
        "edges": graph.e,
        "lower_ratio": lower.ratio,
        "lower_mean": lower.mean_ratio,
        "exact_ratio": exact.ratio,
        "optimal": exact.optimal,
        "nodes_explored": exact.nodes_explored,
        "sandwich": lower.ratio <= exact.ratio,
        "density_limit": Fraction(k - 1, 2 * k),
        "ratio_bound": bound.rhs,
        "bound_holds": bound.holds,
        "bound_status": status,
        "certified": constructed.certified,
        "certificates": _certificates_summary(constructed),
    }


def _nonincreasing(values: Sequence[Fraction]) -> bool:
    return all(a >= b for a, b in zip(values, values[1:]))


def cmd_converge(
    *,
    k: int = 2,
    eps: Fraction = Fraction(1),
    ds: Sequence[int] = (1, 2, 3, 4),
    ms: Sequence[int] = (1,),
    seed: int = 0,
    trials: int = 1000,
    budget: Optional[int] = None,
    mode: CertifyMode = "auto",
    jobs: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> ExperimentReport:
    """Grid over n = m 2^d; rows come back in (m, d) order."""
    started = time.perf_counter()
    settings = settings or get_settings()
    if trials < 1:
        raise PreconditionError(f"trials must be at least 1, got {trials}")
    if any(d < 1 for d in ds):
        raise PreconditionError("converge needs d >= 1 in every instance")
    if any(m < 1 for m in ms):
        raise PreconditionError("block scale m must be positive")
    grid = [(m * 2**d, d) for m in ms for d in ds]
    for n, d in grid:
        ConstructionParams(eps=eps, d=d, k=k, n=n, seed=seed)

    config = ExperimentConfig(
        "converge",
        {
            "k": k,
            "eps": Fraction(eps),
            "d": list(ds),
            "m": list(ms),
            "seed": seed,
            "trials": trials,
            "budget": budget,
            "mode": mode,
        },
    )
    instances = [
        (converge_instance, (k, Fraction(eps), n, d, seed, trials, budget, mode, settings))
        for n, d in grid
    ]
    rows = asyncio.run(run_instances(instances, settings, jobs))

    finished = [row for row in rows if "error" not in row]
    by_scale: dict[str, bool] = {}
    for m in ms:
        ratios = [row["exact_ratio"] for row in finished if row["n"] == m * 2 ** row["d"]]
        by_scale[str(m)] = _nonincreasing(ratios)
    summary = {
        "instances": len(rows),
        "failed": len(rows) - len(finished),
        "min_exact_ratio": min((row["exact_ratio"] for row in finished), default=None),
        "all_above_density_limit": all(
            row["exact_ratio"] >= row["density_limit"] for row in finished
        ),
        "exact_nonincreasing_in_d": by_scale,
        "bound_violations": sum(1 for row in finished if row["bound_status"] == "violated"),
    }
    logger.info(
        "Converge grid finished",
        instances=summary["instances"],
        failed=summary["failed"],
        bound_violations=summary["bound_violations"],
    )
    return _finish(ExperimentReport(config, rows, summary), started)


# lower-bound / solve-exact / embed / params


def cmd_lower_bound(
    graph_path: Union[str, Path],
    *,
    levels: Optional[int] = None,
    pattern: Optional[str] = None,
    trials: int = 1000,
    seed: int = 0,
) -> ExperimentReport:
    """Best sampled leveling with L levels (L = ℓ(F) when a pattern is given)."""
    started = time.perf_counter()
    if (levels is None) == (pattern is None):
        raise PreconditionError("lower-bound needs exactly one of --levels or --pattern")
    L = levels if levels is not None else longest_monotone_path_len(load_pattern(pattern))
    config = ExperimentConfig(
        "lower-bound",
        {"graph": str(graph_path), "levels": L, "pattern": pattern, "trials": trials, "seed": seed},
    )
    graph = read_graph(graph_path)
    result = best_leveling_sampled(graph, L, trials, seed)
    row = {**result.to_dict(), "expected_mean": Fraction(L - 1, 2 * L)}
    return _finish(ExperimentReport(config, [row]), started)


def cmd_solve_exact(
    graph_path: Union[str, Path],
    pattern: str,
    *,
    method: str = "auto",
    budget: Optional[int] = None,
    trials: int = 1000,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> ExperimentReport:
    started = time.perf_counter()
    settings = settings or get_settings()
    if budget is not None:
        settings = replace(settings, node_budget=budget)
    config = ExperimentConfig(
        "solve-exact",
        {"graph": str(graph_path), "pattern": pattern, "method": method, "budget": budget},
    )
    graph = read_graph(graph_path)
    result = solve_relative(
        graph, load_pattern(pattern), method, trials=trials, seed=seed, settings=settings
    )
    return _finish(ExperimentReport(config, [result.to_dict()]), started)


def cmd_embed(host_path: Union[str, Path], pattern: str, *, count: bool = False) -> ExperimentReport:
    started = time.perf_counter()
    config = ExperimentConfig("embed", {"graph": str(host_path), "pattern": pattern, "count": count})
    host = read_graph(host_path)
    target = load_pattern(pattern)
    embedding = contains(host, target)
    row: dict[str, Any] = {
        "found": embedding is not None,
        "embedding": list(embedding.mapping) if embedding else None,
    }
    if count:
        row["count"] = sum(1 for _ in iter_embeddings(host, target))
    return _finish(ExperimentReport(config, [row]), started)


def cmd_params(pattern: str, settings: Optional[Settings] = None) -> ExperimentReport:
    started = time.perf_counter()
    params = turan_parameters(load_pattern(pattern), settings)
    row = {
        "pi": params.pi,
        "vec_pi": params.vec_pi,
        "rho_lower": params.rho_lower,
        "chromatic": params.chromatic,
        "interval_chromatic": params.interval_chromatic,
        "longest_path": params.longest_path,
    }
    return _finish(ExperimentReport(ExperimentConfig("params", {"pattern": pattern}), [row]), started)


# depth / check


def cmd_depth(eps: Fraction, k: int, extra: int = 2) -> ExperimentReport:
    started = time.perf_counter()
    config = ExperimentConfig("depth", {"eps": Fraction(eps), "k": k, "extra": extra})
    rows = depth_table(eps, k, extra)
    return _finish(ExperimentReport(config, rows, {"chosen": choose_depth(eps, k)}), started)


def faulty_h(alpha: SimplexVector, d: int) -> Fraction:
    """h_d with the harmonic term's sign flipped; only for detector sanity runs."""
    return (d + 2) * (1 - alpha.norm_sq) - alpha.k * harmonic(d)


def _basis(k: int, i: int) -> SimplexVector:
    return SimplexVector(tuple(Fraction(int(j == i)) for j in range(k)))


def _lemma_suite(
    ks: Sequence[int],
    ds: Sequence[int],
    triples: int,
    seed: int,
    h_fn: Callable[[SimplexVector, int], Fraction],
    settings: Settings,
) -> tuple[list[dict], list[dict]]:
    rows, violations = [], []
    for k in ks:
        for d in ds:
            rng = np.random.default_rng(derive_seed(seed, "lemma", k, d))
            pairs = [(_basis(k, 0), _basis(k, k - 1))]
            pairs += [
                (random_simplex(rng, k, settings.simplex_draw_max),
                 random_simplex(rng, k, settings.simplex_draw_max))
                for _ in range(max(0, triples - 1))
            ]
            bad = 0
            min_slack: Optional[Fraction] = None
            for beta, gamma in pairs:
                report = check_recursion(beta, gamma, d, h_fn)
                min_slack = report.slack if min_slack is None else min(min_slack, report.slack)
                if not report.holds:
                    bad += 1
                    if bad == 1:
                        violations.append(
                            {
                                "suite": "lemma",
                                "k": k,
                                "d": d,
                                "beta": _vector(beta),
                                "gamma": _vector(gamma),
                                "lhs": format_rational(report.lhs),
                                "rhs": format_rational(report.rhs),
                            }
                        )
            rows.append(
                {
                    "suite": "lemma",
                    "k": k,
                    "d": d,
                    "cases": len(pairs),
                    "violations": bad,
                    "min_slack": min_slack,
                }
            )
    return rows, violations


def _parallelogram_suite(
    ks: Sequence[int], triples: int, seed: int, settings: Settings
) -> tuple[list[dict], list[dict]]:
    rows, violations = [], []
    for k in ks:
        rng = np.random.default_rng(derive_seed(seed, "parallelogram", k))
        bad = 0
        for _ in range(triples):
            beta = random_simplex(rng, k, settings.simplex_draw_max)
            gamma = random_simplex(rng, k, settings.simplex_draw_max)
            gap = parallelogram_gap(beta, gamma)
            if gap != 0:
                bad += 1
                if bad == 1:
                    violations.append(
                        {
                            "suite": "parallelogram",
                            "k": k,
                            "beta": _vector(beta),
                            "gamma": _vector(gamma),
                            "gap": format_rational(gap),
                        }
                    )
        rows.append({"suite": "parallelogram", "k": k, "cases": triples, "violations": bad})
    return rows, violations


def _depth_suite(ks: Sequence[int], eps: Fraction) -> tuple[list[dict], list[dict]]:
    rows, violations = [], []
    for k in ks:
        table = depth_table(eps, k)
        for row in table:
            rows.append({"suite": "depth", "k": k, **row})
            below_chosen = not row["chosen"] and row["d"] < choose_depth(eps, k)
            if (row["chosen"] and not row["holds"]) or (below_chosen and row["holds"]):
                violations.append({"suite": "depth", "k": k, "d": row["d"]})
    return rows, violations


def _partition_suite(
    ks: Sequence[int], eps: Fraction, samples: int, seed: int, settings: Settings
) -> tuple[list[dict], list[dict]]:
    rows, violations = [], []
    for k in ks:
        for n, d in PARTITION_GRID:
            constructed = build_g(
                ConstructionParams(eps=eps, d=d, k=k, n=n, seed=seed), settings, strict=False
            )
            if not constructed.certified:
                rows.append(
                    {"suite": "partition", "k": k, "n": n, "d": d, "cases": 0, "violations": 0,
                     "skipped": "uncertified"}
                )
                continue
            rng = np.random.default_rng(derive_seed(seed, "partition", k, n, d))
            bad = 0
            min_slack: Optional[Fraction] = None
            for _ in range(samples):
                labels = rng.integers(0, k, size=n)
                partition = [[v for v in range(1, n + 1) if labels[v - 1] == i] for i in range(k)]
                report = partition_bound(constructed, partition)
                min_slack = report.slack if min_slack is None else min(min_slack, report.slack)
                if not report.holds:
                    bad += 1
                    if bad == 1:
                        violations.append(
                            {"suite": "partition", "k": k, "n": n, "d": d, "partition": partition,
                             "lhs": format_rational(report.lhs), "rhs": format_rational(report.rhs)}
                        )
            rows.append(
                {"suite": "partition", "k": k, "n": n, "d": d, "cases": samples,
                 "violations": bad, "min_slack": min_slack}
            )
    return rows, violations


def cmd_check(
    *,
    suites: Sequence[str] = CHECK_SUITES,
    ks: Sequence[int] = (2, 3, 4, 5),
    ds: Sequence[int] = tuple(range(1, 9)),
    eps: Fraction = Fraction(1),
    triples: int = 10_000,
    partition_samples: int = 1000,
    seed: int = 0,
    inject_fault: bool = False,
    settings: Optional[Settings] = None,
) -> ExperimentReport:
    """Run the exact-inequality suites; raises SuiteViolation carrying the first witness."""
    started = time.perf_counter()
    settings = settings or get_settings()
    unknown = sorted(set(suites) - set(CHECK_SUITES))
    if unknown:
        raise PreconditionError(f"unknown suites {unknown}; available: {', '.join(CHECK_SUITES)}")
    if any(k < 2 for k in ks) or any(d < 1 for d in ds):
        raise PreconditionError("check needs k >= 2 and d >= 1")
    if Fraction(eps) <= 0 or triples < 1 or partition_samples < 1:
        raise PreconditionError("eps, triples and partition samples must be positive")

    config = ExperimentConfig(
        "check",
        {
            "suites": list(suites),
            "k": list(ks),
            "d": list(ds),
            "eps": Fraction(eps),
            "triples": triples,
            "partition_samples": partition_samples,
            "seed": seed,
            "inject_fault": inject_fault,
        },
    )
    rows: list[dict] = []
    violations: list[dict] = []
    for suite in suites:
        if suite == "lemma":
            out = _lemma_suite(ks, ds, triples, seed, faulty_h if inject_fault else h, settings)
        elif suite == "parallelogram":
            out = _parallelogram_suite(ks, triples, seed, settings)
        elif suite == "depth":
            out = _depth_suite(ks, Fraction(eps))
        else:
            out = _partition_suite(ks, Fraction(eps), partition_samples, seed, settings)
        rows.extend(out[0])
        violations.extend(out[1])
        logger.info("Suite finished", suite=suite, rows=len(out[0]), violations=len(out[1]))

    report = _finish(
        ExperimentReport(config, rows, {"violations": len(violations), "witnesses": violations}),
        started,
    )
    if violations:
        raise SuiteViolation(
            f"{len(violations)} suite violation(s); first in suite {violations[0]['suite']!r}",
            witness=violations[0],
            report=report,
        )
    return report


# blowup-audit


def _random_graph(rng: np.random.Generator, n: int, p: float) -> OrderedGraph:
    edges = [pair for pair in combinations(range(1, n + 1), 2) if rng.random() < p]
    return OrderedGraph(n, frozenset(edges))


def _monotonicity_cases(cases: int, seed: int) -> tuple[int, int, Optional[dict]]:
    """F-free hosts must stay F(t)-free; returns (checked, F-free hosts, counterexample).

    Freeness is decided by enumerating every increasing injection, and the
    backtracking search must find the same lexicographically least copy.
    """
    rng = np.random.default_rng(derive_seed(seed, "monotonicity"))
    free = 0
    for _ in range(cases):
        pattern = _random_graph(rng, int(rng.integers(2, 5)), 0.6)
        if pattern.e == 0:
            pattern = OrderedGraph(pattern.n, frozenset({(1, pattern.n)}))
        host = _random_graph(rng, int(rng.integers(2, 8)), 0.5)
        t = int(rng.integers(1, 3))
        copies = brute_force_embeddings(host, pattern)
        found = contains(host, pattern)
        least = copies[0].mapping if copies else None
        if (found.mapping if found is not None else None) != least:
            mismatch = {"pattern": sorted(pattern.edges), "host": sorted(host.edges)}
            return cases, free, {"containment_mismatch": mismatch}
        if copies:
            continue
        free += 1
        blown, _ = blow_up(pattern, t)
        if contains(host, blown) is not None:
            return cases, free, {"pattern": sorted(pattern.edges), "host": sorted(host.edges), "t": t}
    return cases, free, None


def cmd_blowup_audit(
    base: str,
    pattern: str,
    *,
    t: int = 2,
    eps: Fraction = Fraction(1, 10),
    subgraphs: int = 20,
    cases: int = 100,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> ExperimentReport:
    """Brute-force audit of the blow-up argument on a tiny base graph.

    Rows: the full blow-up, then random dense H' ⊆ G(t). Each row checks the
    transversal identity, the rich-transversal count when e(H') >= (ρ̂ + 2ε) e(G(t)),
    that rich transversals hold copies of F when ρ̂ is exact, and the crossing
    copy lower bound; F(t) containment is reported, not asserted.
    """
    started = time.perf_counter()
    settings = settings or get_settings()
    eps = Fraction(eps)
    if t < 1 or eps <= 0 or subgraphs < 0 or cases < 0:
        raise PreconditionError("blowup-audit needs t >= 1, eps > 0 and nonnegative counts")
    base_graph, target = load_pattern(base), load_pattern(pattern)
    if t**base_graph.n > settings.transversal_cap:
        raise SizeCapError(
            f"t^m = {t ** base_graph.n} transversals exceed the cap {settings.transversal_cap}"
        )
    config = ExperimentConfig(
        "blowup-audit",
        {"base": base, "pattern": pattern, "t": t, "eps": eps, "subgraphs": subgraphs,
         "cases": cases, "seed": seed},
    )

    rho = solve_relative(base_graph, target, "auto", settings=settings)
    threshold = default_rich_threshold(rho.ratio, eps, base_graph)
    host, layout = blow_up(base_graph, t)
    blown_pattern, _ = blow_up(target, t)
    rng = np.random.default_rng(derive_seed(seed, "blowup-audit"))

    candidates = [("full", host)]
    for i in range(subgraphs):
        keep = 0.5 + rng.random() / 2
        kept = [edge for edge in host.sorted_edges if rng.random() < keep]
        candidates.append((f"random-{i}", host.subgraph(kept)))

    rows, failures = [], []
    for label, sub in candidates:
        report = transversal_report(sub, layout, threshold, target, settings)
        dense = Fraction(sub.e) >= (rho.ratio + 2 * eps) * host.e
        rich_ok = not dense or report.rich_fraction_at_least(eps)
        copies_ok = not rho.optimal or report.rich_without_copy == 0
        crossing_ok = report.crossing_copies >= report.crossing_lower_bound
        row = {
            "subgraph": label,
            "edges": sub.e,
            **report.to_dict(),
            "dense": dense,
            "rich_ok": rich_ok,
            "copies_ok": copies_ok,
            "crossing_ok": crossing_ok,
            "contains_blowup": contains(sub, blown_pattern) is not None,
        }
        rows.append(row)
        if not (report.identity_holds and rich_ok and copies_ok and crossing_ok):
            failures.append({"subgraph": label, "edges": sorted(sub.edges)})

    checked, free, counterexample = _monotonicity_cases(cases, seed)
    if counterexample is not None:
        failures.append({"monotonicity": counterexample})
    summary = {
        "rho_hat": rho.ratio,
        "rho_exact": rho.optimal,
        "rich_threshold": threshold,
        "monotonicity_cases": checked,
        "monotonicity_free_hosts": free,
        "failures": len(failures),
    }
    report_out = _finish(ExperimentReport(config, rows, summary), started)
    if failures:
        raise SuiteViolation(
            f"{len(failures)} blow-up audit failure(s)", witness=failures[0], report=report_out
        )
    return report_out
