"""Error hierarchy shared by the library and the CLI.

Every error carries the process exit code the CLI reports and a short
machine-readable ``reason`` slug.
"""

from __future__ import annotations

from typing import Any


class OrderedTuranError(Exception):
    """Base class for all ordered-turan errors."""

    exit_code = 1
    reason = "error"

    def __init__(self, message: str, *, reason: str | None = None, witness: Any = None):
        super().__init__(message)
        self.message = message
        if reason is not None:
            self.reason = reason
        self.witness = witness

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"error": self.reason, "message": self.message}
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


class PreconditionError(OrderedTuranError, ValueError):
    """An operation was called outside its precondition."""

    exit_code = 2
    reason = "precondition"


class SizeCapError(PreconditionError):
    """A brute-force or exhaustive search was asked to exceed its cap."""

    reason = "size_cap"


class GraphFormatError(PreconditionError):
    """Malformed ordered-graph text."""

    reason = "parse"

    def __init__(self, message: str, *, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CertificationError(OrderedTuranError):
    """No quasirandom block passed certification within the retry budget."""

    exit_code = 3
    reason = "certification"


class SuiteViolation(OrderedTuranError):
    """An exact inequality suite found a counterexample.

    ``report`` holds the full report the suite assembled before failing.
    """

    exit_code = 4
    reason = "suite_violation"

    def __init__(self, message: str, *, witness: Any = None, report: Any = None):
        super().__init__(message, witness=witness)
        self.report = report
