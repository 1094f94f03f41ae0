"""Experiment engine - runs grids of independent instances."""

from __future__ import annotations

import asyncio
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Optional, Sequence

from structlog import get_logger

from ordered_turan.config.settings import Settings, get_settings
from ordered_turan.errors import OrderedTuranError
from ordered_turan.log import configure_logging, current_level

logger = get_logger(__name__)

Instance = tuple[Callable[..., dict[str, Any]], tuple[Any, ...]]


class ExperimentEngine:
    """Runs instances concurrently up to ``jobs`` at a time.

    With jobs > 1 each instance runs in a worker process; rows come back in
    submission order whatever the schedule. An instance that raises an
    OrderedTuranError yields an error row instead of aborting the grid.
    """

    def __init__(self, settings: Optional[Settings] = None, jobs: Optional[int] = None):
        self.settings = settings or get_settings()
        self.jobs = max(1, jobs if jobs is not None else self.settings.jobs)
        self._executor: Optional[ProcessPoolExecutor] = None
        self._metrics: dict[str, int] = {
            "instances_started": 0,
            "instances_completed": 0,
            "instances_failed": 0,
        }

    @property
    def metrics(self) -> dict[str, int]:
        return dict(self._metrics)

    async def start(self) -> None:
        if self.jobs > 1 and self._executor is None:
            self._executor = ProcessPoolExecutor(
                max_workers=self.jobs, initializer=configure_logging, initargs=(current_level(),)
            )
        logger.info("ExperimentEngine started", jobs=self.jobs, pooled=self._executor is not None)

    async def shutdown(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None
        logger.info("ExperimentEngine stopped", **self._metrics)

    async def _run_one(
        self, semaphore: asyncio.Semaphore, index: int, fn: Callable[..., dict], args: tuple
    ) -> dict[str, Any]:
        async with semaphore:
            self._metrics["instances_started"] += 1
            started = time.perf_counter()
            try:
                if self._executor is not None:
                    loop = asyncio.get_running_loop()
                    row = await loop.run_in_executor(self._executor, fn, *args)
                else:
                    row = fn(*args)
            except OrderedTuranError as exc:
                self._metrics["instances_failed"] += 1
                logger.warning("Instance failed", index=index, reason=exc.reason, message=exc.message)
                return {"index": index, **exc.to_dict()}
            self._metrics["instances_completed"] += 1
            logger.debug("Instance finished", index=index, seconds=time.perf_counter() - started)
            return {"index": index, **row}

    async def run_grid(self, instances: Sequence[Instance]) -> list[dict[str, Any]]:
        semaphore = asyncio.Semaphore(self.jobs)
        tasks = [
            asyncio.create_task(self._run_one(semaphore, i, fn, args), name=f"instance_{i}")
            for i, (fn, args) in enumerate(instances)
        ]
        try:
            return list(await asyncio.gather(*tasks))
        finally:
            for task in tasks:
                if not task.done():
                    task.cancel()
            await asyncio.gather(*tasks, return_exceptions=True)


async def run_instances(
    instances: Sequence[Instance], settings: Optional[Settings] = None, jobs: Optional[int] = None
) -> list[dict[str, Any]]:
    engine = ExperimentEngine(settings, jobs)
    await engine.start()
    try:
        return await engine.run_grid(instances)
    finally:
        await engine.shutdown()
