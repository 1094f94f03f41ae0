"""Tests for ExperimentEngine grid execution."""

from __future__ import annotations

from fractions import Fraction

import pytest

from ordered_turan.config.settings import Settings
from ordered_turan.errors import PreconditionError
from ordered_turan.harness.commands import converge_instance
from ordered_turan.harness.engine import ExperimentEngine, run_instances


def _square(x):
    return {"value": x * x}


def _refuse(x):
    raise PreconditionError(f"refusing {x}", reason="refused")


@pytest.mark.asyncio
async def test_rows_come_back_in_submission_order():
    engine = ExperimentEngine(Settings(), jobs=1)
    await engine.start()
    try:
        rows = await engine.run_grid([(_square, (i,)) for i in range(5)])
    finally:
        await engine.shutdown()

    assert [row["index"] for row in rows] == [0, 1, 2, 3, 4]
    assert [row["value"] for row in rows] == [0, 1, 4, 9, 16]
    assert engine.metrics == {
        "instances_started": 5,
        "instances_completed": 5,
        "instances_failed": 0,
    }


@pytest.mark.asyncio
async def test_failed_instance_becomes_error_row():
    engine = ExperimentEngine(Settings(), jobs=1)
    await engine.start()
    try:
        rows = await engine.run_grid([(_square, (2,)), (_refuse, (3,)), (_square, (4,))])
    finally:
        await engine.shutdown()

    assert rows[0] == {"index": 0, "value": 4}
    assert rows[1] == {"index": 1, "error": "refused", "message": "refusing 3"}
    assert rows[2]["value"] == 16
    assert engine.metrics["instances_failed"] == 1
    assert engine.metrics["instances_completed"] == 2


def test_jobs_default_to_settings():
    assert ExperimentEngine(Settings(jobs=3)).jobs == 3
    assert ExperimentEngine(Settings(jobs=3), jobs=0).jobs == 1


@pytest.mark.asyncio
async def test_process_pool_matches_serial_run():
    settings = Settings()
    instances = [
        (converge_instance, (2, Fraction(1), 2**d, d, 0, 20, None, "auto", settings))
        for d in (1, 2, 3)
    ]
    serial = await run_instances(instances, settings, jobs=1)
    pooled = await run_instances(instances, settings, jobs=2)

    assert serial == pooled
    assert [row["d"] for row in pooled] == [1, 2, 3]
