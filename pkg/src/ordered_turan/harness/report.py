"""Experiment configs and reports: canonical JSON plus flat CSV tables."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd
from structlog import get_logger

from ordered_turan import __version__
from ordered_turan.core.io import format_rational

logger = get_logger(__name__)


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, Path):
        return str(value)
    return value


def params_hash(params: dict[str, Any]) -> str:
    payload = json.dumps(_jsonable(params), sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to replay one command."""

    command: str
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def fingerprint(self) -> str:
        return params_hash({"command": self.command, **self.params})

    def to_dict(self) -> dict[str, Any]:
        return {"command": self.command, "params": _jsonable(self.params)}


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    wall_clock: Optional[float] = None

    def to_dict(self, include_wall_clock: bool = True) -> dict[str, Any]:
        payload = {
            "config": self.config.to_dict(),
            "fingerprint": self.config.fingerprint,
            "version": __version__,
            "rows": _jsonable(self.rows),
            "summary": _jsonable(self.summary),
        }
        if include_wall_clock:
            payload["wall_clock_seconds"] = self.wall_clock
        return payload

    def to_json(self, include_wall_clock: bool = True) -> str:
        return json.dumps(self.to_dict(include_wall_clock), indent=2, sort_keys=True) + "\n"

    def to_frame(self) -> pd.DataFrame:
        """One column per field; each rational also gets a ``<name>_approx`` float column."""
        flat_rows = []
        for row in self.rows:
            flat: dict[str, Any] = {}
            for key, value in row.items():
                if isinstance(value, Fraction):
                    flat[key] = format_rational(value)
                    flat[f"{key}_approx"] = float(value)
                elif isinstance(value, (dict, list, tuple)):
                    flat[key] = json.dumps(_jsonable(value), sort_keys=True, separators=(",", ":"))
                else:
                    flat[key] = value
            flat_rows.append(flat)
        return pd.DataFrame(flat_rows)

    def write_json(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text(self.to_json(), encoding="utf-8")
        logger.info("Report written", path=str(path), format="json", rows=len(self.rows))
        return path

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        self.to_frame().to_csv(path, index=False)
        logger.info("Report written", path=str(path), format="csv", rows=len(self.rows))
        return path
