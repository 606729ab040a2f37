from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Sequence

import numpy as np
from scipy import stats

from pivotal_predict.density import (
    DEFAULT_N_POINTS,
    MIN_N_POINTS,
    FloatArray,
    GridDensity,
    GridSpec,
    normalize,
    summarize,
)
from pivotal_predict.exceptions import ValidationError
from pivotal_predict.utilities import require_positive, require_real

log = logging.getLogger(__name__)

# Half-widths of auto grids, in sd for normals and in scale units for laplace.
NORMAL_HALF_WIDTH = 10.0
LAPLACE_HALF_WIDTH = 25.0
SPACING_RTOL = 1e-9
WEIGHT_ATOL = 1e-9
EDGE_RATIO = 1e-10


class Family(str, Enum):
    NORMAL = "normal"
    LAPLACE = "laplace"
    UNIFORM = "uniform"
    MIXTURE = "normal-mixture"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class MixtureComponent:
    weight: float
    mean: float
    sd: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", require_positive("weight", self.weight))
        object.__setattr__(self, "mean", require_real("mean", self.mean))
        object.__setattr__(self, "sd", require_positive("sd", self.sd))


@dataclass(frozen=True)
class NoiseSpec:
    """
    Declared density of an additive noise term (or of a prior).

    Scalar families keep their two parameters in ``params``: normal
    (mean, sd), laplace (loc, scale), uniform (a, b). Mixtures use
    ``components``; tabulated densities use ``table`` = (x, pdf).
    Build instances through the classmethods.
    """

    family: Family
    params: tuple[float, ...] = ()
    components: tuple[MixtureComponent, ...] = ()
    table: tuple[tuple[float, ...], tuple[float, ...]] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.NORMAL:
            mean, sd = self._pair()
            self._set_params(require_real("mean", mean), require_positive("sd", sd))
        elif self.family is Family.LAPLACE:
            loc, scale = self._pair()
            self._set_params(
                require_real("loc", loc), require_positive("scale", scale)
            )
        elif self.family is Family.UNIFORM:
            a, b = self._pair()
            a, b = require_real("a", a), require_real("b", b)
            if not a < b:
                raise ValidationError("b", f"must exceed a, got a={a!r}, b={b!r}")
            self._set_params(a, b)
        elif self.family is Family.MIXTURE:
            self._check_mixture()
        elif self.family is Family.TABULATED:
            self._check_table()

    def _pair(self) -> tuple[Any, Any]:
        if len(self.params) != 2:
            raise ValidationError(
                "params", f"{self.family.value} takes 2 parameters, got {len(self.params)}"
            )
        return self.params[0], self.params[1]

    def _set_params(self, *values: float) -> None:
        object.__setattr__(self, "params", tuple(values))

    def _check_mixture(self) -> None:
        if not self.components:
            raise ValidationError("components", "mixture needs at least one component")
        total = math.fsum(c.weight for c in self.components)
        if abs(total - 1.0) > WEIGHT_ATOL:
            raise ValidationError("weight", f"mixture weights must sum to 1, got {total!r}")

    def _check_table(self) -> None:
        if self.table is None:
            raise ValidationError("x", "tabulated noise needs x and pdf arrays")
        x = np.asarray(self.table[0], dtype=np.float64)
        pdf = np.asarray(self.table[1], dtype=np.float64)
        if x.ndim != 1 or x.size < MIN_N_POINTS or x.size % 2 == 0:
            raise ValidationError(
                "x", f"needs an odd number of nodes >= {MIN_N_POINTS}, got {x.size}"
            )
        if pdf.shape != x.shape:
            raise ValidationError("pdf", f"expected {x.size} values, got {pdf.size}")
        if not np.all(np.isfinite(x)):
            raise ValidationError("x", "nodes must be finite")
        if not np.all(np.isfinite(pdf)):
            raise ValidationError("pdf", "values must be finite")
        if np.any(pdf < 0):
            raise ValidationError("pdf", "values must be nonnegative")
        gaps = np.diff(x)
        step = (x[-1] - x[0]) / (x.size - 1)
        if not step > 0 or np.any(np.abs(gaps - step) > SPACING_RTOL * step):
            raise ValidationError("x", "nodes must be ascending with uniform spacing")

    @classmethod
    def normal(cls, mean: float = 0.0, sd: float = 1.0) -> NoiseSpec:
        return cls(Family.NORMAL, (mean, sd))

    @classmethod
    def laplace(cls, loc: float = 0.0, scale: float = 1.0) -> NoiseSpec:
        return cls(Family.LAPLACE, (loc, scale))

    @classmethod
    def uniform(cls, a: float, b: float) -> NoiseSpec:
        return cls(Family.UNIFORM, (a, b))

    @classmethod
    def mixture(cls, components: Iterable[tuple[float, float, float]]) -> NoiseSpec:
        return cls(
            Family.MIXTURE,
            components=tuple(MixtureComponent(w, m, s) for w, m, s in components),
        )

    @classmethod
    def tabulated(cls, x: Sequence[float], pdf: Sequence[float]) -> NoiseSpec:
        return cls(
            Family.TABULATED,
            table=(tuple(float(v) for v in x), tuple(float(v) for v in pdf)),
        )

    def parameters(self) -> dict[str, Any]:
        """Family parameters under their configuration key names."""
        if self.family is Family.NORMAL:
            return {"mean": self.params[0], "sd": self.params[1]}
        if self.family is Family.LAPLACE:
            return {"loc": self.params[0], "scale": self.params[1]}
        if self.family is Family.UNIFORM:
            return {"a": self.params[0], "b": self.params[1]}
        if self.family is Family.MIXTURE:
            return {
                "components": [
                    {"weight": c.weight, "mean": c.mean, "sd": c.sd}
                    for c in self.components
                ]
            }
        assert self.table is not None
        return {"x": list(self.table[0]), "pdf": list(self.table[1])}

    def sd(self) -> float:
        if self.family is Family.NORMAL:
            return self.params[1]
        if self.family is Family.LAPLACE:
            return math.sqrt(2.0) * self.params[1]
        if self.family is Family.UNIFORM:
            return (self.params[1] - self.params[0]) / math.sqrt(12.0)
        if self.family is Family.MIXTURE:
            m = math.fsum(c.weight * c.mean for c in self.components)
            second = math.fsum(
                c.weight * (c.sd**2 + c.mean**2) for c in self.components
            )
            return math.sqrt(max(second - m * m, 0.0))
        return summarize(realize(self)).sd


def auto_grid(spec: NoiseSpec, n_points: int = DEFAULT_N_POINTS) -> GridSpec:
    """Default truncation of an analytic family's support."""
    if spec.family is Family.NORMAL:
        mean, sd = spec.params
        return GridSpec(
            mean - NORMAL_HALF_WIDTH * sd, mean + NORMAL_HALF_WIDTH * sd, n_points
        )
    if spec.family is Family.LAPLACE:
        loc, scale = spec.params
        return GridSpec(
            loc - LAPLACE_HALF_WIDTH * scale, loc + LAPLACE_HALF_WIDTH * scale, n_points
        )
    if spec.family is Family.UNIFORM:
        # one padding node per side, half a step outside the support
        a, b = spec.params
        h = (b - a) / (n_points - 2)
        return GridSpec(a - h / 2, b + h / 2, n_points)
    if spec.family is Family.MIXTURE:
        lo = min(c.mean - NORMAL_HALF_WIDTH * c.sd for c in spec.components)
        hi = max(c.mean + NORMAL_HALF_WIDTH * c.sd for c in spec.components)
        return GridSpec(lo, hi, n_points)
    assert spec.table is not None
    x = spec.table[0]
    return GridSpec(x[0], x[-1], len(x))


def _evaluate(spec: NoiseSpec, grid: GridSpec) -> FloatArray:
    x = grid.nodes
    if spec.family is Family.NORMAL:
        return stats.norm.pdf(x, loc=spec.params[0], scale=spec.params[1])
    if spec.family is Family.LAPLACE:
        return stats.laplace.pdf(x, loc=spec.params[0], scale=spec.params[1])
    if spec.family is Family.UNIFORM:
        # cell averages: exact on grids whose nodes straddle the edges
        a, b = spec.params
        h = grid.step
        inside = np.minimum(x + h / 2, b) - np.maximum(x - h / 2, a)
        return np.clip(inside, 0.0, None) / (h * (b - a))
    if spec.family is Family.MIXTURE:
        return np.sum(
            [c.weight * stats.norm.pdf(x, loc=c.mean, scale=c.sd) for c in spec.components],
            axis=0,
        )
    assert spec.table is not None
    return np.asarray(spec.table[1], dtype=np.float64)


@functools.lru_cache(maxsize=256)
def realize(spec: NoiseSpec, grid_policy: GridSpec | None = None) -> GridDensity:
    """
    Tabulate a declared density and normalize it.

    ``grid_policy=None`` picks the family's auto grid. Tabulated densities
    always keep their own grid.
    """
    if spec.family is Family.TABULATED:
        if grid_policy is not None:
            log.debug("tabulated noise keeps its own grid; ignoring %s", grid_policy)
        grid = auto_grid(spec)
    else:
        grid = grid_policy if grid_policy is not None else auto_grid(spec)
    values = _evaluate(spec, grid)
    d = normalize(GridDensity(grid, values))
    if spec.family is not Family.TABULATED and grid_policy is not None:
        edge = max(d.values[0], d.values[-1])
        if edge > EDGE_RATIO * float(np.max(d.values)):
            log.warning(
                "%s noise is truncated by grid [%g, %g]", spec.family.value, grid.lo, grid.hi
            )
    return d
