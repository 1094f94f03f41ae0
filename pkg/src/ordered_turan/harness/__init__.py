"""Experiment harness: commands, async grid engine and reports."""

from ordered_turan.harness.engine import ExperimentEngine, run_instances
from ordered_turan.harness.report import ExperimentConfig, ExperimentReport, params_hash

__all__ = [
    "ExperimentConfig",
    "ExperimentEngine",
    "ExperimentReport",
    "params_hash",
    "run_instances",
]
