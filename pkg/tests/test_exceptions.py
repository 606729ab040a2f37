"""Tests for exception classes."""

import pytest

from pivotal_predict import (
    ConfigError,
    ConfigSchemaError,
    ConfigSyntaxError,
    DegenerateDensityError,
    DomainError,
    GridMismatchError,
    NoOverlapError,
    PivotalError,
    ValidationError,
)


def test_pivotal_error_is_exception():
    assert issubclass(PivotalError, Exception)


@pytest.mark.parametrize(
    "cls",
    [
        ValidationError,
        DegenerateDensityError,
        NoOverlapError,
        GridMismatchError,
        ConfigError,
    ],
)
def test_inherits_from_base(cls):
    assert issubclass(cls, PivotalError)


def test_domain_error_is_validation_error():
    assert issubclass(DomainError, ValidationError)


def test_config_errors_inherit():
    assert issubclass(ConfigSyntaxError, ConfigError)
    assert issubclass(ConfigSchemaError, ConfigError)


def test_validation_error_names_field():
    err = ValidationError("sd", "must be > 0, got -1.0")
    assert err.field == "sd"
    assert str(err) == "sd: must be > 0, got -1.0"


def test_syntax_error_location():
    err = ConfigSyntaxError("could not find expected ':'", 3, 7)
    assert (err.line, err.column) == (3, 7)
    assert "line 3, column 7" in str(err)


def test_syntax_error_without_location():
    err = ConfigSyntaxError("bad document", None, None)
    assert str(err) == "bad document"


def test_schema_error_names_key():
    err = ConfigSchemaError("skew", "unknown key")
    assert err.key == "skew"
    assert "skew" in str(err)


def test_raise_and_catch_as_base():
    with pytest.raises(PivotalError):
        raise NoOverlapError("should be caught as base")

    with pytest.raises(PivotalError):
        raise DomainError("gamma", "should be caught as base")

    with pytest.raises(ValidationError):
        raise DomainError("gamma", "should be caught as validation")
