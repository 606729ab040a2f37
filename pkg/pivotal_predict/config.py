"""Model configuration documents and the written data formats.

Config schema (YAML, schema_version 1)::

    schema_version: 1          # optional; any other value is rejected
    noise1: {family: normal, mean: 0.0, sd: 1.0}
    noise2: {family: laplace, loc: 0.0, scale: 1.0}
    grid: {lo: -10.0, hi: 10.0, n_points: 4097}     # optional
    prior: {family: uniform, a: -50.0, b: 50.0}     # optional

Families and their keys: normal (mean, sd), laplace (loc, scale),
uniform (a, b), normal-mixture (components: [{weight, mean, sd}, ...]),
tabulated (x + pdf arrays, or path to a density CSV). mean and loc
default to 0. Unknown keys are errors.

Numbers are written with Python's shortest round-tripping float repr.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np
import yaml

from pivotal_predict.density import FloatArray, GridDensity, GridSpec, cdf
from pivotal_predict.exceptions import (
    ConfigSchemaError,
    ConfigSyntaxError,
    ValidationError,
)
from pivotal_predict.noise import Family, NoiseSpec
from pivotal_predict.pivotal import MeasurementModel
from pivotal_predict.stubs import ReportProtocol
from pivotal_predict.utilities import SCHEMA_VERSION, resolve_data_path

TOP_LEVEL_KEYS = ("schema_version", "noise1", "noise2", "grid", "prior")
GRID_KEYS = ("lo", "hi", "n_points")
COMPONENT_KEYS = ("weight", "mean", "sd")
FAMILY_KEYS: dict[Family, tuple[str, ...]] = {
    Family.NORMAL: ("mean", "sd"),
    Family.LAPLACE: ("loc", "scale"),
    Family.UNIFORM: ("a", "b"),
    Family.MIXTURE: ("components",),
    Family.TABULATED: ("x", "pdf", "path"),
}
OPTIONAL_ZERO = ("mean", "loc")


@dataclass(frozen=True)
class ModelConfig:
    noise1: NoiseSpec
    noise2: NoiseSpec
    grid: GridSpec | None = None
    prior: NoiseSpec | None = None
    schema_version: int = SCHEMA_VERSION

    @property
    def model(self) -> MeasurementModel:
        return MeasurementModel(self.noise1, self.noise2, self.grid)


def _mapping(key: str, value: Any) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise ConfigSchemaError(key, f"expected a mapping, got {type(value).__name__}")
    for k in value:
        if not isinstance(k, str):
            raise ConfigSchemaError(key, f"keys must be strings, got {k!r}")
    return value


def _reject_unknown(where: str, doc: Mapping[str, Any], allowed: tuple[str, ...]) -> None:
    unknown = [k for k in doc if k not in allowed]
    if unknown:
        raise ConfigSchemaError(
            unknown[0],
            f"unknown key in {where}; allowed: {', '.join(allowed)}",
        )


def _required(where: str, doc: Mapping[str, Any], key: str) -> Any:
    if key not in doc:
        raise ConfigSchemaError(key, f"missing required key in {where}")
    return doc[key]


def _number_list(key: str, value: Any) -> list[float]:
    if not isinstance(value, list):
        raise ConfigSchemaError(key, "expected a list of numbers")
    return value


def _parse_grid(value: Any) -> GridSpec:
    doc = _mapping("grid", value)
    _reject_unknown("grid", doc, GRID_KEYS)
    return GridSpec(
        _required("grid", doc, "lo"),
        _required("grid", doc, "hi"),
        _required("grid", doc, "n_points"),
    )


def _parse_noise(where: str, value: Any, base_dir: str) -> NoiseSpec:
    doc = _mapping(where, value)
    raw_family = _required(where, doc, "family")
    try:
        family = Family(raw_family)
    except ValueError as e:
        choices = ", ".join(f.value for f in Family)
        raise ConfigSchemaError(
            "family", f"unknown family {raw_family!r} in {where}; expected one of {choices}"
        ) from e
    params = {k: v for k, v in doc.items() if k != "family"}
    _reject_unknown(f"{where} ({family.value})", params, FAMILY_KEYS[family])

    if family is Family.MIXTURE:
        items = _required(where, params, "components")
        if not isinstance(items, list):
            raise ConfigSchemaError("components", "expected a list of mappings")
        components = []
        for item in items:
            comp = _mapping("components", item)
            _reject_unknown(f"{where} component", comp, COMPONENT_KEYS)
            components.append(
                (
                    _required("component", comp, "weight"),
                    comp.get("mean", 0.0),
                    _required("component", comp, "sd"),
                )
            )
        return NoiseSpec.mixture(components)

    if family is Family.TABULATED:
        if "path" in params:
            if "x" in params or "pdf" in params:
                raise ConfigSchemaError("path", "give either path or x/pdf, not both")
            path = params["path"]
            if not isinstance(path, str):
                raise ConfigSchemaError("path", "expected a file path string")
            return read_density_csv(resolve_data_path(base_dir, path))
        x = _number_list("x", _required(where, params, "x"))
        pdf = _number_list("pdf", _required(where, params, "pdf"))
        _check_numbers("x", x)
        _check_numbers("pdf", pdf)
        return NoiseSpec.tabulated(x, pdf)

    first, second = FAMILY_KEYS[family]
    a = params.get(first, 0.0) if first in OPTIONAL_ZERO else _required(where, params, first)
    b = _required(where, params, second)
    return NoiseSpec(family, (a, b))


def _check_numbers(key: str, values: list[Any]) -> None:
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(key, f"expected numbers, got {v!r}")


def parse_model_config(text: str, base_dir: str = ".") -> ModelConfig:
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        line = mark.line + 1 if mark is not None else None
        column = mark.column + 1 if mark is not None else None
        raise ConfigSyntaxError(str(e.problem or e), line, column) from e
    except yaml.YAMLError as e:
        raise ConfigSyntaxError(str(e), None, None) from e

    doc = _mapping("<document>", doc)
    _reject_unknown("document", doc, TOP_LEVEL_KEYS)

    version = doc.get("schema_version", SCHEMA_VERSION)
    if isinstance(version, bool) or version != SCHEMA_VERSION:
        raise ConfigSchemaError(
            "schema_version", f"unsupported version {version!r}; expected {SCHEMA_VERSION}"
        )
    grid = _parse_grid(doc["grid"]) if doc.get("grid") is not None else None
    prior = (
        _parse_noise("prior", doc["prior"], base_dir)
        if doc.get("prior") is not None
        else None
    )
    return ModelConfig(
        noise1=_parse_noise("noise1", _required("document", doc, "noise1"), base_dir),
        noise2=_parse_noise("noise2", _required("document", doc, "noise2"), base_dir),
        grid=grid,
        prior=prior,
        schema_version=SCHEMA_VERSION,
    )


def _read_text(path: str) -> str:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ConfigSyntaxError(
            f"{path!r} is not valid UTF-8 (byte offset {e.start})", None, None
        ) from e


def load_model_config(path: str) -> ModelConfig:
    text = _read_text(path)
    return parse_model_config(text, base_dir=os.path.dirname(os.path.abspath(path)))


def _fmt(value: float) -> str:
    return repr(float(value))


def write_density_csv(d: GridDensity, out_path: str, cdf_included: bool = False) -> None:
    columns = [d.x, d.values]
    header = ["x", "pdf"]
    if cdf_included:
        columns.append(cdf(d))
        header.append("cdf")
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([_fmt(v) for v in row])


def read_density_csv(path: str) -> NoiseSpec:
    """Read a density CSV back as a tabulated noise."""
    rows = list(csv.reader(io.StringIO(_read_text(path), newline="")))
    if not rows or rows[0][:2] != ["x", "pdf"]:
        raise ConfigSchemaError("header", f"{path!r} is not a density CSV (x,pdf)")
    try:
        table = np.array([[float(r[0]), float(r[1])] for r in rows[1:]], dtype=np.float64)
    except (ValueError, IndexError) as e:
        raise ConfigSchemaError("pdf", f"malformed row in {path!r}: {e}") from e
    if table.size == 0:
        raise ValidationError("x", f"{path!r} has no rows")
    return NoiseSpec.tabulated(table[:, 0], table[:, 1])


def write_sample_csv(draws: FloatArray, out_path: str) -> None:
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x"])
        for v in draws:
            writer.writerow([_fmt(v)])


def write_report(report: ReportProtocol, out_path: str) -> None:
    """Write a report as a YAML mapping, keys in the report's own order."""
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        yaml.safe_dump(
            report.as_dict(), fh, sort_keys=False, default_flow_style=False
        )


def read_report(path: str) -> dict[str, Any]:
    doc = yaml.safe_load(_read_text(path))
    return dict(_mapping("<report>", doc))
