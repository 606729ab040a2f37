from __future__ import annotations

import os

import pytest

from pivotal_predict.config import write_report
from pivotal_predict.montecarlo import (
    MIN_REPLICATES,
    CoverageReport,
    coverage_experiment,
)
from pivotal_predict.pivotal import MeasurementModel
from pivotal_predict.stubs import IntervalRule

DEFAULT_SEED = 20041019
DEFAULT_REPLICATES = 10_000
DEFAULT_WORKERS = 1


def _int_setting(config: pytest.Config, name: str, default: int) -> int:
    raw_cli = config.getoption(name, default=None)
    if raw_cli is not None:
        return int(raw_cli)
    raw_ini = (config.getini(name) or "").strip()
    if raw_ini:
        try:
            return int(raw_ini)
        except ValueError as e:
            raise ValueError(f"ini option {name!r} must be an integer, got {raw_ini!r}") from e
    return default


class CoverageRunner:
    """
    Callable runner used by the pytest fixture.

    Usage (from tests):

        def test_calibrated(coverage_runner: CoverageRunner):
            report = coverage_runner(model, gamma=0.95)
            assert report.passed
    """

    def __init__(self, request: pytest.FixtureRequest) -> None:
        config = request.config

        seed = _int_setting(config, "pivotal_seed", DEFAULT_SEED)
        replicates = _int_setting(config, "pivotal_replicates", DEFAULT_REPLICATES)
        workers = _int_setting(config, "pivotal_workers", DEFAULT_WORKERS)

        assert replicates >= MIN_REPLICATES, (
            f"pivotal_replicates must be >= {MIN_REPLICATES}; got {replicates}"
        )
        assert workers >= 1, f"pivotal_workers must be >= 1; got {workers}"

        report_dir_cli = config.getoption("pivotal_report_dir", default=None)
        report_dir_ini = (config.getini("pivotal_report_dir") or "").strip()
        report_dir = report_dir_cli or report_dir_ini or None

        self._seed = seed
        self._replicates = replicates
        self._workers = workers
        self._report_dir = os.path.abspath(report_dir) if report_dir else None
        self._reports: list[CoverageReport] = []

    def __call__(
        self,
        model: MeasurementModel,
        gamma: float,
        theta: float = 0.0,
        n: int | None = None,
        seed: int | None = None,
        rule: IntervalRule | None = None,
    ) -> CoverageReport:
        report = coverage_experiment(
            model,
            theta,
            gamma,
            self._replicates if n is None else n,
            self._seed if seed is None else seed,
            workers=self._workers,
            rule=rule,
        )
        self._reports.append(report)
        return report

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def replicates(self) -> int:
        return self._replicates

    @property
    def workers(self) -> int:
        return self._workers

    @property
    def report_dir(self) -> str | None:
        return self._report_dir

    @property
    def reports(self) -> list[CoverageReport]:
        if not self._reports:
            raise RuntimeError("CoverageRunner has not been invoked yet")
        return list(self._reports)

    @property
    def last(self) -> CoverageReport:
        if not self._reports:
            raise RuntimeError("CoverageRunner has not been invoked yet")
        return self._reports[-1]

    def write_reports(self, prefix: str = "coverage") -> list[str]:
        """Write every collected report to the report directory, in call order."""
        if self._report_dir is None or not self._reports:
            return []
        os.makedirs(self._report_dir, exist_ok=True)
        paths = []
        for i, report in enumerate(self._reports):
            path = os.path.join(self._report_dir, f"{prefix}-{i:03d}.yaml")
            write_report(report, path)
            paths.append(path)
        return paths
