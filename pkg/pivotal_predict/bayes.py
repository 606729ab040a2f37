"""Bayesian treatments of a location measurement under a proper prior.

Two routes to the post-data density of the error e1 = s - θ must agree:

A. update θ with the likelihood L(t) ∝ f1(s - t), then change variables
   e = s - t (unit Jacobian);
B. treat f1 as the prior for the error and π(s - e) as its likelihood.

A wide uniform prior also reproduces the direct pivotal predictive, which
coincidence_sweep() measures.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from scipy.integrate import trapezoid

from pivotal_predict.density import (
    GridDensity,
    STEP_RTOL,
    convolve,
    pointwise_product,
    reflect,
    shift,
)
from pivotal_predict.exceptions import (
    DegenerateDensityError,
    NoOverlapError,
    ValidationError,
)
from pivotal_predict.noise import NoiseSpec, realize
from pivotal_predict.pivotal import MeasurementModel, predictive_density
from pivotal_predict.utilities import (
    SCHEMA_VERSION,
    require_positive,
    require_real,
)

log = logging.getLogger(__name__)

# A prior is declared exactly like a noise density.
PriorSpec = NoiseSpec

DEFAULT_TOLERANCE = 1e-8
DEFAULT_HALF_WIDTHS = (5.0, 10.0, 25.0, 50.0)


@dataclass(frozen=True)
class ConsistencyReport:
    sup_norm_gap: float
    l1_gap: float
    grid_points: int
    tolerance: float
    no_overlap: bool = False

    report_type = "consistency"

    @property
    def passed(self) -> bool:
        return not self.no_overlap and self.sup_norm_gap <= self.tolerance

    def as_dict(self) -> dict[str, Any]:
        return {
            "report_type": self.report_type,
            "schema_version": SCHEMA_VERSION,
            "sup_norm_gap": float(self.sup_norm_gap),
            "l1_gap": float(self.l1_gap),
            "grid_points": int(self.grid_points),
            "tolerance": float(self.tolerance),
            "no_overlap": bool(self.no_overlap),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class CoincidenceReport:
    observed_x1: float
    center: float
    window: float
    half_widths: tuple[float, ...]
    gaps: tuple[float, ...]

    report_type = "coincidence"

    @property
    def monotone(self) -> bool:
        return all(b <= a + 1e-12 for a, b in zip(self.gaps, self.gaps[1:]))

    def as_dict(self) -> dict[str, Any]:
        return {
            "report_type": self.report_type,
            "schema_version": SCHEMA_VERSION,
            "observed_x1": self.observed_x1,
            "center": self.center,
            "window": self.window,
            "half_widths": [float(v) for v in self.half_widths],
            "gaps": [float(v) for v in self.gaps],
            "monotone": self.monotone,
        }


def likelihood_theta(f1: GridDensity, s: float) -> GridDensity:
    """
    L(t) ∝ f1(s - t) on the nodes t = s - e; unnormalized and prior-free.
    """
    s = require_real("x1", s)
    return shift(reflect(f1), s)


def likelihood_error(prior: GridDensity, s: float) -> GridDensity:
    """L(e) ∝ π(s - e): the likelihood of the error under treatment B."""
    s = require_real("x1", s)
    return shift(reflect(prior), s)


def posterior_theta(f1: GridDensity, prior: GridDensity, s: float) -> GridDensity:
    return pointwise_product(likelihood_theta(f1, s), prior)


def posterior_error_A(f1: GridDensity, prior: GridDensity, s: float) -> GridDensity:
    """Posterior of θ mapped to the error through e = s - t."""
    s = require_real("x1", s)
    return shift(reflect(posterior_theta(f1, prior, s)), s)


def posterior_error_B(f1: GridDensity, prior: GridDensity, s: float) -> GridDensity:
    """f1 as the prior of the error, π(s - e) as its likelihood."""
    return pointwise_product(f1, likelihood_error(prior, s))


def check_consistency(
    f1: GridDensity,
    prior: GridDensity,
    s: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ConsistencyReport:
    """
    Compare both error posteriors on the finer of their grids. Disjoint
    data and prior are reported, not raised.
    """
    tolerance = require_positive("tol", tolerance)
    try:
        a = posterior_error_A(f1, prior, s)
        b = posterior_error_B(f1, prior, s)
    except (NoOverlapError, DegenerateDensityError) as e:
        # joint mass on at most one node counts as no overlap
        log.info("consistency check has no overlap: %s", e)
        return ConsistencyReport(
            sup_norm_gap=math.inf,
            l1_gap=math.inf,
            grid_points=0,
            tolerance=tolerance,
            no_overlap=True,
        )
    common = a if a.grid.step < b.grid.step * (1.0 - STEP_RTOL) else b
    x = common.x
    gap = np.abs(a(x) - b(x))
    return ConsistencyReport(
        sup_norm_gap=float(np.max(gap)),
        l1_gap=float(trapezoid(gap, dx=common.grid.step)),
        grid_points=common.grid.n_points,
        tolerance=tolerance,
    )


def prior_predictive(
    model: MeasurementModel, prior: GridDensity, s: float
) -> GridDensity:
    """∫ f2(x2 - t) p(t | x1 = s) dt."""
    f1, f2 = model.realized()
    return convolve(f2, posterior_theta(f1, prior, s))


def coincidence_sweep(
    model: MeasurementModel,
    s: float,
    half_widths: Sequence[float] = DEFAULT_HALF_WIDTHS,
    *,
    center: float = 0.0,
    window: float = 5.0,
) -> CoincidenceReport:
    """
    Sup-norm gap between the uniform-prior predictive and the direct
    pivotal predictive, for uniform priors on center ± L·max_sd, measured
    on s ± window·max_sd.
    """
    s = require_real("x1", s)
    center = require_real("center", center)
    window = require_positive("window", window)
    widths = tuple(require_positive("half_width", w) for w in half_widths)
    if not widths:
        raise ValidationError("half_width", "at least one half-width is required")
    unit = model.max_sd
    direct = predictive_density(model, s).predictive
    x = direct.x[np.abs(direct.x - s) <= window * unit]
    gaps = []
    for width in widths:
        prior = realize(
            PriorSpec.uniform(center - width * unit, center + width * unit)
        )
        indirect = prior_predictive(model, prior, s)
        gap = float(np.max(np.abs(indirect(x) - direct(x))))
        log.debug("uniform prior half-width %g: gap %.3e", width, gap)
        gaps.append(gap)
    return CoincidenceReport(
        observed_x1=s,
        center=center,
        window=window,
        half_widths=widths,
        gaps=tuple(gaps),
    )
