"""Direct pivotal prediction for location measurements.

With x_i = θ + e_i and known noise densities f1, f2, the difference
D = X2 - X1 = E2 - E1 has a density that involves no θ at all:

    p_D(d) = ∫ f1(ξ) f2(d + ξ) dξ

and, having observed x1 = s, the predictive density of x2 is p_D(x2 - s).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from pivotal_predict.density import (
    GridDensity,
    GridSpec,
    cdf,
    cross_correlate,
    quantiles,
    shift,
    summarize,
)
from pivotal_predict.noise import NoiseSpec, realize
from pivotal_predict.utilities import (
    SCHEMA_VERSION,
    require_open_unit,
    require_real,
)


@dataclass(frozen=True)
class MeasurementModel:
    noise1: NoiseSpec
    noise2: NoiseSpec
    grid_policy: GridSpec | None = None

    def realized(self) -> tuple[GridDensity, GridDensity]:
        return (
            realize(self.noise1, self.grid_policy),
            realize(self.noise2, self.grid_policy),
        )

    @property
    def max_sd(self) -> float:
        return max(self.noise1.sd(), self.noise2.sd())


@dataclass(frozen=True)
class PredictiveInterval:
    gamma: float
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class PredictiveResult:
    observed_x1: float
    predictive: GridDensity
    pivot: GridDensity
    intervals: tuple[PredictiveInterval, ...] = field(default=())

    report_type = "predictive"

    def interval(self, gamma: float) -> PredictiveInterval:
        for item in self.intervals:
            if item.gamma == gamma:
                return item
        raise KeyError(gamma)

    def as_dict(self) -> dict[str, Any]:
        moments = summarize(self.predictive)
        return {
            "report_type": self.report_type,
            "schema_version": SCHEMA_VERSION,
            "observed_x1": self.observed_x1,
            "mean": moments.mean,
            "variance": moments.variance,
            "grid_points": self.predictive.grid.n_points,
            "intervals": [
                {"gamma": i.gamma, "lo": i.lo, "hi": i.hi} for i in self.intervals
            ],
        }


@functools.lru_cache(maxsize=64)
def pivot_density(model: MeasurementModel) -> GridDensity:
    """Density of D = X2 - X1; a function of (f1, f2) only."""
    f1, f2 = model.realized()
    return cross_correlate(f1, f2)


def central_interval(d: GridDensity, gamma: float) -> tuple[float, float]:
    """Equal-tailed interval holding mass gamma."""
    gamma = require_open_unit("gamma", gamma)
    lo, hi = quantiles(d, [(1.0 - gamma) / 2.0, (1.0 + gamma) / 2.0])
    return float(lo), float(hi)


def predictive_density(
    model: MeasurementModel,
    s: float,
    gammas: Iterable[float] = (),
    *,
    pivot: GridDensity | None = None,
) -> PredictiveResult:
    """
    Predictive density for x2 given x1 = s, with one central interval per
    requested gamma. ``pivot`` lets repeated calls reuse a computed pivot.
    """
    s = require_real("x1", s)
    levels = [require_open_unit("gamma", g) for g in gammas]
    d = pivot if pivot is not None else pivot_density(model)
    predictive = shift(d, s)
    intervals = tuple(
        PredictiveInterval(g, *central_interval(predictive, g)) for g in levels
    )
    return PredictiveResult(
        observed_x1=s, predictive=predictive, pivot=d, intervals=intervals
    )


def known_theta_predictive(model: MeasurementModel, theta: float) -> GridDensity:
    """Density of x2 when θ is known: f2 translated by θ."""
    theta = require_real("theta", theta)
    return shift(realize(model.noise2, model.grid_policy), theta)


def interval_masses(d: GridDensity, lo: float, hi: float) -> tuple[float, float, float]:
    """Lower tail, central and upper tail mass of [lo, hi] under d's cdf."""
    c = cdf(d)
    c_lo, c_hi = np.interp([lo, hi], d.x, c)
    return float(c_lo), float(c_hi - c_lo), float(c[-1] - c_hi)
