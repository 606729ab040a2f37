"""Structural types shared across modules.

Reports and interval rules are duck-typed; these Protocol classes let the
writers and the simulation harness be type checked without a common base.
"""

from __future__ import annotations

from typing import Any, Protocol


class ReportProtocol(Protocol):
    """Anything write_report() can serialize."""

    report_type: str

    def as_dict(self) -> dict[str, Any]: ...


class IntervalRule(Protocol):
    """Maps an observed x1 and a coverage level to a predictive interval."""

    def __call__(self, x1: float, gamma: float) -> tuple[float, float]: ...
