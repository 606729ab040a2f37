from __future__ import annotations

import re
from typing import Generator

import pytest

from pivotal_predict.runner import (
    DEFAULT_REPLICATES,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    CoverageRunner,
)


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addini(
        "pivotal_seed",
        "Master seed for coverage experiments.",
        default=str(DEFAULT_SEED),
    )
    parser.addini(
        "pivotal_replicates",
        "Replicates per coverage experiment (>= 100).",
        default=str(DEFAULT_REPLICATES),
    )
    parser.addini(
        "pivotal_workers",
        "Threads used to run replicates.",
        default=str(DEFAULT_WORKERS),
    )
    parser.addini(
        "pivotal_report_dir",
        "Directory to store coverage reports; empty disables writing.",
        default="",
    )

    grp = parser.getgroup("pivotal")
    grp.addoption(
        "--pivotal-seed",
        action="store",
        dest="pivotal_seed",
        type=int,
        help="Master seed for coverage experiments",
    )
    grp.addoption(
        "--pivotal-replicates",
        action="store",
        dest="pivotal_replicates",
        type=int,
        help="Replicates per coverage experiment",
    )
    grp.addoption(
        "--pivotal-workers",
        action="store",
        dest="pivotal_workers",
        type=int,
        help="Threads used to run replicates",
    )
    grp.addoption(
        "--pivotal-report-dir",
        action="store",
        dest="pivotal_report_dir",
        help="Directory to store coverage reports.",
    )


@pytest.fixture(scope="module")
def coverage_runner(
    request: pytest.FixtureRequest,
) -> Generator[CoverageRunner, None, None]:
    runner = CoverageRunner(request)
    try:
        yield runner
    finally:
        prefix = re.sub(r"[^A-Za-z0-9_.-]+", "_", request.node.name)
        runner.write_reports(prefix=prefix)
