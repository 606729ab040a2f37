"""Frequentist checks of the pivotal predictive by simulation.

Replicate k draws from its own generator,
``PCG64(SeedSequence(seed, spawn_key=(k,)))``, which is what
``SeedSequence(seed).spawn(n)[k]`` would hand out; serial and threaded runs
therefore see identical streams.
"""

from __future__ import annotations

import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from numpy.typing import NDArray

from pivotal_predict.density import FloatArray, sample
from pivotal_predict.exceptions import ValidationError
from pivotal_predict.pivotal import (
    MeasurementModel,
    pivot_density,
    predictive_density,
)
from pivotal_predict.stubs import IntervalRule
from pivotal_predict.utilities import (
    SCHEMA_VERSION,
    require_open_unit,
    require_real,
)

log = logging.getLogger(__name__)

MIN_REPLICATES = 100
PASS_SIGMAS = 3.0


@dataclass(frozen=True)
class CoverageReport:
    gamma: float
    n_replicates: int
    theta_used: float
    seed: int
    hits: int
    hit_digest: str

    report_type = "coverage"

    @property
    def empirical_coverage(self) -> float:
        return self.hits / self.n_replicates

    @property
    def binomial_sd(self) -> float:
        return math.sqrt(self.gamma * (1.0 - self.gamma) / self.n_replicates)

    @property
    def passed(self) -> bool:
        return abs(self.empirical_coverage - self.gamma) <= PASS_SIGMAS * self.binomial_sd

    def as_dict(self) -> dict[str, Any]:
        return {
            "report_type": self.report_type,
            "schema_version": SCHEMA_VERSION,
            "gamma": self.gamma,
            "n_replicates": self.n_replicates,
            "theta_used": self.theta_used,
            "seed": self.seed,
            "hits": self.hits,
            "empirical_coverage": self.empirical_coverage,
            "binomial_sd": self.binomial_sd,
            "pass": self.passed,
            "hit_digest": self.hit_digest,
        }


def _require_seed(seed: Any) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValidationError("seed", f"expected an integer, got {seed!r}")
    if seed < 0:
        raise ValidationError("seed", f"must be >= 0, got {seed}")
    return int(seed)


def _require_count(field: str, n: Any, minimum: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ValidationError(field, f"expected an integer, got {n!r}")
    if n < minimum:
        raise ValidationError(field, f"must be >= {minimum}, got {n}")
    return int(n)


def seeded_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(_require_seed(seed))))


def replicate_rng(seed: int, k: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(_require_seed(seed), spawn_key=(int(k),))
    return np.random.Generator(np.random.PCG64(sequence))


def simulate_pairs(
    model: MeasurementModel, theta: float, rng: np.random.Generator, count: int
) -> tuple[FloatArray, FloatArray]:
    theta = require_real("theta", theta)
    f1, f2 = model.realized()
    e1 = sample(f1, rng, count)
    e2 = sample(f2, rng, count)
    return theta + e1, theta + e2


def simulate_pair(
    model: MeasurementModel, theta: float, rng: np.random.Generator
) -> tuple[float, float]:
    """x1 = θ + e1, x2 = θ + e2 with independent noise draws."""
    x1, x2 = simulate_pairs(model, theta, rng, 1)
    return float(x1[0]), float(x2[0])


def pivotal_rule(model: MeasurementModel) -> IntervalRule:
    """Central predictive interval from the pivot, computed once."""
    pivot = pivot_density(model)

    def rule(x1: float, gamma: float) -> tuple[float, float]:
        result = predictive_density(model, x1, (gamma,), pivot=pivot)
        interval = result.intervals[0]
        return interval.lo, interval.hi

    return rule


def hit_sequence(
    model: MeasurementModel,
    theta: float,
    gamma: float,
    n: int,
    seed: int,
    *,
    workers: int = 1,
    rule: IntervalRule | None = None,
) -> NDArray[np.bool_]:
    """
    Per-replicate indicator that x2 falls in the interval built from x1.
    Endpoints count as hits.
    """
    theta = require_real("theta", theta)
    gamma = require_open_unit("gamma", gamma)
    n = _require_count("n", n, MIN_REPLICATES)
    seed = _require_seed(seed)
    workers = _require_count("workers", workers, 1)
    interval_of = rule if rule is not None else pivotal_rule(model)
    # fill the realize cache before worker threads share it
    model.realized()

    def one(k: int) -> bool:
        x1, x2 = simulate_pair(model, theta, replicate_rng(seed, k))
        lo, hi = interval_of(x1, gamma)
        return lo <= x2 <= hi

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(one, range(n)))
    else:
        hits = [one(k) for k in range(n)]
    return np.array(hits, dtype=bool)


def digest_hits(hits: NDArray[np.bool_]) -> str:
    payload = hits.size.to_bytes(8, "little") + np.packbits(hits).tobytes()
    return hashlib.sha256(payload).hexdigest()


def coverage_experiment(
    model: MeasurementModel,
    theta: float,
    gamma: float,
    n: int,
    seed: int,
    *,
    workers: int = 1,
    rule: IntervalRule | None = None,
) -> CoverageReport:
    hits = hit_sequence(model, theta, gamma, n, seed, workers=workers, rule=rule)
    report = CoverageReport(
        gamma=float(gamma),
        n_replicates=int(n),
        theta_used=float(theta),
        seed=int(seed),
        hits=int(np.count_nonzero(hits)),
        hit_digest=digest_hits(hits),
    )
    log.info(
        "coverage gamma=%g theta=%g: %d/%d hits (%.4f), pass=%s",
        report.gamma,
        report.theta_used,
        report.hits,
        report.n_replicates,
        report.empirical_coverage,
        report.passed,
    )
    return report


def theta_invariance_check(
    model: MeasurementModel,
    thetas: Sequence[float],
    gamma: float,
    n: int,
    seed: int,
    *,
    workers: int = 1,
    rule: IntervalRule | None = None,
) -> bool:
    """True iff every θ yields the same hit sequence under a shared seed."""
    if len(thetas) == 0:
        raise ValidationError("thetas", "at least one theta is required")
    interval_of = rule if rule is not None else pivotal_rule(model)
    reference: NDArray[np.bool_] | None = None
    for theta in thetas:
        hits = hit_sequence(
            model, theta, gamma, n, seed, workers=workers, rule=interval_of
        )
        if reference is None:
            reference = hits
        elif not np.array_equal(hits, reference):
            log.info("hit sequence changed at theta=%g", theta)
            return False
    return True
