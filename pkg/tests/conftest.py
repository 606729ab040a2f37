"""Pytest configuration for pivotal-predict tests."""

import os

import pytest

from pivotal_predict import MeasurementModel, NoiseSpec


@pytest.fixture(scope="function", autouse=True)
def cd_to_test_dir(request):
    """Change to test file's directory for relative path resolution."""
    original_dir = os.getcwd()
    os.chdir(request.fspath.dirname)
    yield
    os.chdir(original_dir)


@pytest.fixture
def normal_model() -> MeasurementModel:
    return MeasurementModel(NoiseSpec.normal(0.0, 1.0), NoiseSpec.normal(0.0, 1.0))


@pytest.fixture
def laplace_normal_model() -> MeasurementModel:
    return MeasurementModel(NoiseSpec.laplace(0.0, 1.0), NoiseSpec.normal(0.0, 1.0))


@pytest.fixture
def uniform_model() -> MeasurementModel:
    return MeasurementModel(NoiseSpec.uniform(-1.0, 1.0), NoiseSpec.uniform(-1.0, 1.0))
