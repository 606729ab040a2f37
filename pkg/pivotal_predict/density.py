"""One-dimensional probability densities tabulated on uniform grids.

Every operation returns a new value; densities are immutable once built.
Quadrature is the trapezoid rule throughout so that normalization, the cdf
and convolution agree with one another.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import fft as sp_fft
from scipy import signal
from scipy.integrate import cumulative_trapezoid, trapezoid

from pivotal_predict.exceptions import (
    DegenerateDensityError,
    GridMismatchError,
    NoOverlapError,
    ValidationError,
)
from pivotal_predict.utilities import require_open_unit, require_real

log = logging.getLogger(__name__)

DEFAULT_N_POINTS = 4097
MIN_N_POINTS = 9
# Per-operand node limit when two grids are brought onto a common step.
MAX_COMMON_NODES = 2**18 + 1
STEP_RTOL = 1e-9
NO_OVERLAP_MASS = 1e-300

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    n_points: int = DEFAULT_N_POINTS

    def __post_init__(self) -> None:
        lo = require_real("lo", self.lo)
        hi = require_real("hi", self.hi)
        if isinstance(self.n_points, bool) or not isinstance(
            self.n_points, (int, np.integer)
        ):
            raise ValidationError(
                "n_points", f"expected an integer, got {self.n_points!r}"
            )
        n = int(self.n_points)
        if n < MIN_N_POINTS or n % 2 == 0:
            raise ValidationError(
                "n_points", f"must be odd and >= {MIN_N_POINTS}, got {n}"
            )
        if not lo < hi:
            raise ValidationError("hi", f"must exceed lo, got lo={lo!r}, hi={hi!r}")
        step = (hi - lo) / (n - 1)
        if not (math.isfinite(step) and step > 0):
            raise ValidationError("n_points", f"grid step is degenerate: {step!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "n_points", n)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.n_points - 1)

    @property
    def span(self) -> float:
        return self.hi - self.lo

    @property
    def nodes(self) -> FloatArray:
        return np.linspace(self.lo, self.hi, self.n_points)

    @classmethod
    def from_step(cls, lo: float, step: float, min_span: float) -> GridSpec:
        """
        Smallest odd-sized grid starting at lo with the given step whose span
        covers min_span.
        """
        n = _odd_count(min_span, step)
        return cls(lo, lo + (n - 1) * step, n)


def _odd_count(span: float, step: float) -> int:
    n = int(math.ceil(span / step - 1e-9)) + 1
    if n % 2 == 0:
        n += 1
    return max(n, MIN_N_POINTS)


@dataclass(frozen=True, eq=False)
class GridDensity:
    """
    Nonnegative density values on the nodes of a GridSpec.

    The constructor does not normalize; use normalize() for that. Values are
    copied and frozen.
    """

    grid: GridSpec
    values: FloatArray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] != self.grid.n_points:
            raise ValidationError(
                "values",
                f"expected {self.grid.n_points} values, got shape {values.shape}",
            )
        if not np.all(np.isfinite(values)):
            raise DegenerateDensityError("density values must be finite")
        if np.any(values < 0):
            raise ValidationError("values", "density values must be nonnegative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> FloatArray:
        return self.grid.nodes

    @property
    def step(self) -> float:
        return self.grid.step

    @property
    def mass(self) -> float:
        return float(trapezoid(self.values, dx=self.grid.step))

    def __call__(self, x: ArrayLike) -> FloatArray:
        """Evaluate by linear interpolation; zero outside the grid."""
        return np.interp(
            np.asarray(x, dtype=np.float64), self.x, self.values, left=0.0, right=0.0
        )


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    variance: float
    total_mass: float

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


def normalize(d: GridDensity) -> GridDensity:
    if np.count_nonzero(d.values) < 2:
        raise DegenerateDensityError(
            "density must carry mass on at least two grid nodes"
        )
    mass = d.mass
    if not (math.isfinite(mass) and mass > 0):
        raise DegenerateDensityError(f"density integral is not positive: {mass!r}")
    return GridDensity(d.grid, d.values / mass)


def summarize(d: GridDensity) -> SummaryStats:
    x = d.x
    h = d.grid.step
    mass = float(trapezoid(d.values, dx=h))
    mean = float(trapezoid(x * d.values, dx=h)) / mass
    variance = float(trapezoid((x - mean) ** 2 * d.values, dx=h)) / mass
    return SummaryStats(mean=mean, variance=max(variance, 0.0), total_mass=mass)


def cdf(d: GridDensity) -> FloatArray:
    return cumulative_trapezoid(d.values, dx=d.grid.step, initial=0.0)


def quantiles(d: GridDensity, ps: ArrayLike) -> FloatArray:
    """
    Inverse of the piecewise-linear cdf; each p is taken relative to the
    total mass so a density normalized to 1 ± 1e-8 inverts cleanly.
    """
    c = cdf(d)
    target = np.asarray(ps, dtype=np.float64) * c[-1]
    idx = np.clip(np.searchsorted(c, target, side="left"), 1, c.size - 1)
    c0 = c[idx - 1]
    width = c[idx] - c0
    safe = np.where(width > 0, width, 1.0)
    t = np.clip(np.where(width > 0, (target - c0) / safe, 0.0), 0.0, 1.0)
    return d.x[idx - 1] + t * d.grid.step


def quantile(d: GridDensity, p: float) -> float:
    p = require_open_unit("p", p)
    return float(quantiles(d, [p])[0])


def sample(d: GridDensity, rng: np.random.Generator, count: int) -> FloatArray:
    """Inverse-cdf draws; the generator is owned and advanced by the caller."""
    if isinstance(count, bool) or not isinstance(count, (int, np.integer)):
        raise ValidationError("count", f"expected an integer, got {count!r}")
    if count < 0:
        raise ValidationError("count", f"must be >= 0, got {count}")
    if count == 0:
        return np.empty(0, dtype=np.float64)
    return quantiles(d, rng.random(int(count)))


def shift(d: GridDensity, c: float) -> GridDensity:
    c = require_real("c", c)
    g = d.grid
    return GridDensity(GridSpec(g.lo + c, g.hi + c, g.n_points), d.values)


def reflect(d: GridDensity) -> GridDensity:
    g = d.grid
    return GridDensity(GridSpec(-g.hi, -g.lo, g.n_points), d.values[::-1])


def resample(d: GridDensity, grid: GridSpec) -> GridDensity:
    """
    Linear interpolation onto an equal or finer step. Coarser targets are
    rebinned from cdf differences so the mass carried by narrow features
    survives.
    """
    if grid.step <= d.grid.step * (1.0 + STEP_RTOL):
        values = d(grid.nodes)
    else:
        values = _rebin(d, grid)
    return GridDensity(grid, values)


def _rebin(d: GridDensity, grid: GridSpec) -> FloatArray:
    h = grid.step
    edges = np.linspace(grid.lo - h / 2, grid.hi + h / 2, grid.n_points + 1)
    c = cdf(d)
    mass = np.interp(edges, d.x, c, left=0.0, right=c[-1])
    return np.clip(np.diff(mass) / h, 0.0, None)


def _same_step(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=STEP_RTOL)


def _common_step(*densities: GridDensity) -> float:
    step = min(d.grid.step for d in densities)
    floor = max(d.grid.span for d in densities) / (MAX_COMMON_NODES - 1)
    if step < floor:
        log.debug(
            "common step %.3e exceeds node limit, coarsening to %.3e", step, floor
        )
        return floor
    return step


def _on_step(d: GridDensity, step: float) -> GridDensity:
    if _same_step(d.grid.step, step):
        return d
    log.debug("resampling %d nodes from step %.3e to %.3e", d.grid.n_points, d.grid.step, step)
    return resample(d, GridSpec.from_step(d.grid.lo, step, d.grid.span))


def _aligned(a: GridDensity, b: GridDensity) -> tuple[GridDensity, GridDensity]:
    step = _common_step(a, b)
    a2, b2 = _on_step(a, step), _on_step(b, step)
    if not _same_step(a2.grid.step, b2.grid.step):
        raise GridMismatchError(
            f"grid steps differ after resampling: {a2.grid.step!r} vs {b2.grid.step!r}"
        )
    return a2, b2


def _sum_grid(a: GridDensity, b: GridDensity) -> GridSpec:
    n = a.grid.n_points + b.grid.n_points - 1
    lo = a.grid.lo + b.grid.lo
    return GridSpec(lo, lo + (n - 1) * a.grid.step, n)


def _fft_convolve(x: FloatArray, y: FloatArray) -> FloatArray:
    n = x.size + y.size - 1
    nfft = sp_fft.next_fast_len(n, real=True)
    spectrum = sp_fft.rfft(x, nfft) * sp_fft.rfft(y, nfft)
    return sp_fft.irfft(spectrum, nfft)[:n]


def _finish(grid: GridSpec, raw: FloatArray, step: float) -> GridDensity:
    return normalize(GridDensity(grid, np.clip(raw * step, 0.0, None)))


def convolve(a: GridDensity, b: GridDensity) -> GridDensity:
    """Density of X + Y for independent X ~ a, Y ~ b (zero-padded FFT)."""
    a2, b2 = _aligned(a, b)
    return _finish(_sum_grid(a2, b2), _fft_convolve(a2.values, b2.values), a2.step)


def direct_convolve(a: GridDensity, b: GridDensity) -> GridDensity:
    """O(n_a * n_b) quadrature of the same sum; the oracle for convolve()."""
    a2, b2 = _aligned(a, b)
    return _finish(
        _sum_grid(a2, b2), np.convolve(a2.values, b2.values, mode="full"), a2.step
    )


def cross_correlate(a: GridDensity, b: GridDensity) -> GridDensity:
    """
    g(d) = ∫ a(ξ) b(d + ξ) dξ, the density of Y - X for X ~ a, Y ~ b.

    Same grids as convolve(reflect(a), b), computed through a correlation
    kernel rather than a convolution of reversed values.
    """
    ar2, b2 = _aligned(reflect(a), b)
    a2 = reflect(ar2)
    raw = signal.correlate(b2.values, a2.values, mode="full", method="fft")
    return _finish(_sum_grid(ar2, b2), raw, ar2.step)


def _overlap_nodes(a: GridDensity, b: GridDensity) -> FloatArray:
    lo = max(a.grid.lo, b.grid.lo)
    hi = min(a.grid.hi, b.grid.hi)
    if not lo < hi:
        raise NoOverlapError(
            f"supports [{a.grid.lo}, {a.grid.hi}] and [{b.grid.lo}, {b.grid.hi}] are disjoint"
        )
    # finer operand sets the nodes; ties go to the first operand
    base = a if a.grid.step <= b.grid.step * (1.0 + STEP_RTOL) else b
    h = base.grid.step
    i0 = int(math.ceil((lo - base.grid.lo) / h - 1e-9))
    i1 = int(math.floor((hi - base.grid.lo) / h + 1e-9))
    count = i1 - i0 + 1
    if count < MIN_N_POINTS:
        return np.linspace(lo, hi, MIN_N_POINTS)
    start = base.grid.lo + i0 * h
    return np.linspace(start, start + (count - 1) * h, count)


def pointwise_product(a: GridDensity, b: GridDensity) -> GridDensity:
    """
    Normalized a(x) * b(x) on the overlap of the two supports.

    Operands need not be normalized; unnormalized likelihoods are fine. An
    even node count is made odd with one zero node, on the end where the
    product is smaller, so mirrored operands give mirrored grids.
    """
    x = _overlap_nodes(a, b)
    values = a(x) * b(x)
    lo, hi = float(x[0]), float(x[-1])
    if x.size % 2 == 0:
        h = (hi - lo) / (x.size - 1)
        if values[0] < values[-1]:
            lo -= h
            values = np.concatenate(([0.0], values))
        else:
            hi += h
            values = np.append(values, 0.0)
    product = GridDensity(GridSpec(lo, hi, values.size), values)
    if not product.mass > NO_OVERLAP_MASS:
        raise NoOverlapError("operands carry no joint mass on their common support")
    return normalize(product)


def sup_norm(a: GridDensity, b: GridDensity) -> float:
    """Largest pointwise gap, evaluated on the nodes of both grids."""
    xs = np.concatenate([a.x, b.x])
    return float(np.max(np.abs(a(xs) - b(xs))))
