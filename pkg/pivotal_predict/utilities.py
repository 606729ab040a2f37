from __future__ import annotations

import math
import os
from typing import Any

import numpy as np

from pivotal_predict.exceptions import DomainError, ValidationError

# Version of the config schema and of every written report.
SCHEMA_VERSION = 1


def require_real(field: str, value: Any) -> float:
    """
    Coerce a scalar to float, refusing bools, strings and non-finite values.
    """
    if isinstance(value, bool) or not isinstance(
        value, (int, float, np.integer, np.floating)
    ):
        raise ValidationError(field, f"expected a real number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ValidationError(field, f"must be finite, got {out!r}")
    return out


def require_positive(field: str, value: Any) -> float:
    out = require_real(field, value)
    if out <= 0:
        raise ValidationError(field, f"must be > 0, got {out!r}")
    return out


def require_open_unit(field: str, value: Any) -> float:
    out = require_real(field, value)
    if not 0.0 < out < 1.0:
        raise DomainError(field, f"must lie in (0, 1), got {out!r}")
    return out


def parse_gamma_list(text: str) -> list[float]:
    """
    Parse a comma-separated list of coverage levels, e.g. "0.5,0.95".
    """
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise ValidationError("gamma", "at least one level is required")
    out: list[float] = []
    for item in items:
        try:
            value = float(item)
        except ValueError as e:
            raise ValidationError("gamma", f"not a number: {item!r}") from e
        out.append(require_open_unit("gamma", value))
    return out


def resolve_data_path(base_dir: str, path: str) -> str:
    """
    If path is absolute and exists -> return it.
    Else treat as relative to base_dir (the config file's directory).
    """
    if os.path.isabs(path):
        if os.path.exists(path):
            return path
        raise FileNotFoundError(f"data file not found: {path!r}")
    candidate = os.path.join(base_dir, path)
    if os.path.exists(candidate):
        return candidate
    raise FileNotFoundError(
        f"data file not found relative to config directory. "
        f"base_dir={base_dir!r}, path={path!r}, tried={candidate!r}"
    )


def ensure_parent_dir(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
