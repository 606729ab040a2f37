"""Tests for the direct pivotal predictive."""

import math

import numpy as np
import pytest
from scipy import stats

from pivotal_predict import (
    DomainError,
    MeasurementModel,
    NoiseSpec,
    ValidationError,
    known_theta_predictive,
    pivot_density,
    predictive_density,
    reflect,
    summarize,
    sup_norm,
)
from pivotal_predict.pivotal import central_interval, interval_masses
from pivotal_predict.utilities import SCHEMA_VERSION


@pytest.mark.parametrize("s1", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("s2", [0.5, 1.0, 2.0])
def test_pivot_matches_normal_closed_form(s1, s2):
    model = MeasurementModel(NoiseSpec.normal(0.0, s1), NoiseSpec.normal(0.0, s2))
    d = pivot_density(model)
    expected = stats.norm.pdf(d.x, scale=math.hypot(s1, s2))
    assert np.max(np.abs(d.values - expected)) <= 1e-5


def test_pivot_ignores_noise_offsets():
    a = pivot_density(MeasurementModel(NoiseSpec.normal(1.0, 1.0), NoiseSpec.normal(1.0, 1.0)))
    assert summarize(a).mean == pytest.approx(0.0, abs=1e-9)


def test_pivot_of_laplace_and_normal(laplace_normal_model):
    moments = summarize(pivot_density(laplace_normal_model))
    assert moments.mean == pytest.approx(0.0, abs=1e-6)
    assert moments.variance == pytest.approx(3.0, rel=1e-4)


def test_pivot_of_uniforms_is_triangle(uniform_model):
    d = pivot_density(uniform_model)
    assert d(0.0) == pytest.approx(0.5, abs=1e-9)
    assert d(1.0) == pytest.approx(0.25, abs=1e-3)
    assert d(2.5) == 0.0


def test_predictive_interval_unit_normals(normal_model):
    result = predictive_density(normal_model, 3.0, [0.95])
    interval = result.interval(0.95)
    half = stats.norm.ppf(0.975) * math.sqrt(2.0)
    assert interval.lo == pytest.approx(3.0 - half, abs=2e-3)
    assert interval.hi == pytest.approx(3.0 + half, abs=2e-3)
    assert interval.width == pytest.approx(2 * half, abs=4e-3)


@pytest.mark.parametrize("c", [-7.25, 0.5, 1e3])
def test_predictive_is_equivariant(normal_model, c):
    base = predictive_density(normal_model, 3.0, [0.5, 0.9])
    moved = predictive_density(normal_model, 3.0 + c, [0.5, 0.9])
    for a, b in zip(base.intervals, moved.intervals):
        assert b.lo - a.lo == pytest.approx(c, abs=1e-9)
        assert b.hi - a.hi == pytest.approx(c, abs=1e-9)


def test_predictive_tails_hold_equal_mass(laplace_normal_model):
    result = predictive_density(laplace_normal_model, -1.0, [0.8])
    lower, central, upper = interval_masses(result.predictive, *central_interval(result.predictive, 0.8))
    assert lower == pytest.approx(0.1, abs=1e-9)
    assert central == pytest.approx(0.8, abs=1e-9)
    assert upper == pytest.approx(0.1, abs=1e-9)


def test_predictive_reuses_pivot(normal_model):
    pivot = pivot_density(normal_model)
    result = predictive_density(normal_model, 1.0, pivot=pivot)
    assert result.pivot is pivot
    assert result.intervals == ()
    assert summarize(result.predictive).mean == pytest.approx(1.0, abs=1e-9)


def test_predictive_rejects_bad_input(normal_model):
    with pytest.raises(DomainError, match="^gamma"):
        predictive_density(normal_model, 0.0, [1.5])
    with pytest.raises(ValidationError, match="^x1"):
        predictive_density(normal_model, math.nan, [0.5])


def test_interval_lookup_missing(normal_model):
    result = predictive_density(normal_model, 0.0, [0.5])
    with pytest.raises(KeyError):
        result.interval(0.9)


def test_predictive_report_fields(normal_model):
    doc = predictive_density(normal_model, 3.0, [0.5, 0.95]).as_dict()
    assert list(doc) == [
        "report_type",
        "schema_version",
        "observed_x1",
        "mean",
        "variance",
        "grid_points",
        "intervals",
    ]
    assert doc["report_type"] == "predictive"
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["mean"] == pytest.approx(3.0, abs=1e-9)
    assert doc["variance"] == pytest.approx(2.0, abs=1e-6)
    assert [i["gamma"] for i in doc["intervals"]] == [0.5, 0.95]


def test_known_theta_predictive(normal_model):
    d = known_theta_predictive(normal_model, 2.0)
    moments = summarize(d)
    assert moments.mean == pytest.approx(2.0, abs=1e-9)
    assert moments.variance == pytest.approx(1.0, abs=1e-9)


def test_measurement_model_max_sd(laplace_normal_model):
    assert laplace_normal_model.max_sd == pytest.approx(math.sqrt(2.0))


@pytest.mark.parametrize(
    "noise1,noise2",
    [
        (NoiseSpec.laplace(0.0, 1.0), NoiseSpec.normal(0.0, 1.0)),
        (NoiseSpec.normal(0.0, 0.5), NoiseSpec.normal(0.0, 2.0)),
    ],
    ids=["laplace-normal", "narrow-wide"],
)
def test_swapping_noises_reflects_pivot(noise1, noise2):
    forward = pivot_density(MeasurementModel(noise1, noise2))
    swapped = pivot_density(MeasurementModel(noise2, noise1))
    assert sup_norm(forward, reflect(swapped)) <= 1e-10
