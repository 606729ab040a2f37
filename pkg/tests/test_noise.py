"""Tests for noise declarations and their realization on grids."""

import logging
import math

import numpy as np
import pytest
from scipy import stats

from pivotal_predict import Family, GridSpec, NoiseSpec, ValidationError, realize, summarize
from pivotal_predict.density import cdf
from pivotal_predict.noise import auto_grid


def test_family_values():
    assert Family("normal-mixture") is Family.MIXTURE
    assert [f.value for f in Family] == [
        "normal",
        "laplace",
        "uniform",
        "normal-mixture",
        "tabulated",
    ]


def test_specs_are_hashable_and_equal_by_value():
    assert NoiseSpec.normal(0, 1) == NoiseSpec.normal(0.0, 1.0)
    assert len({NoiseSpec.normal(), NoiseSpec.normal(), NoiseSpec.laplace()}) == 2


def test_realize_is_cached():
    assert realize(NoiseSpec.normal(0.0, 1.0)) is realize(NoiseSpec.normal(0.0, 1.0))


@pytest.mark.parametrize(
    "build,field",
    [
        (lambda: NoiseSpec.normal(0.0, -1.0), "sd"),
        (lambda: NoiseSpec.laplace(0.0, 0.0), "scale"),
        (lambda: NoiseSpec.uniform(1.0, 1.0), "b"),
        (lambda: NoiseSpec.uniform(2.0, 1.0), "b"),
        (lambda: NoiseSpec.normal(math.nan, 1.0), "mean"),
        (lambda: NoiseSpec.mixture([(0.5, 0.0, 1.0), (0.4, 1.0, 1.0)]), "weight"),
        (lambda: NoiseSpec.mixture([]), "components"),
        (lambda: NoiseSpec.mixture([(1.0, 0.0, -2.0)]), "sd"),
    ],
)
def test_invalid_parameters_name_the_field(build, field):
    with pytest.raises(ValidationError) as exc:
        build()
    assert exc.value.field == field
    assert str(exc.value).startswith(f"{field}:")


def test_tabulated_validation():
    x = np.linspace(0.0, 1.0, 9)
    with pytest.raises(ValidationError, match="^x:"):
        NoiseSpec.tabulated(x[:8], np.ones(8))
    with pytest.raises(ValidationError, match="^pdf:"):
        NoiseSpec.tabulated(x, np.ones(7))
    with pytest.raises(ValidationError, match="^pdf:"):
        NoiseSpec.tabulated(x, -np.ones(9))
    bent = x.copy()
    bent[3] += 0.01
    with pytest.raises(ValidationError, match="uniform spacing"):
        NoiseSpec.tabulated(bent, np.ones(9))


def test_sd_values():
    assert NoiseSpec.normal(3.0, 2.0).sd() == 2.0
    assert NoiseSpec.laplace(0.0, 1.0).sd() == pytest.approx(math.sqrt(2.0))
    assert NoiseSpec.uniform(-1.0, 1.0).sd() == pytest.approx(1.0 / math.sqrt(3.0))
    mix = NoiseSpec.mixture([(0.5, -1.0, 1.0), (0.5, 1.0, 1.0)])
    assert mix.sd() == pytest.approx(math.sqrt(2.0))


def test_parameters_use_config_names():
    assert NoiseSpec.laplace(1.0, 2.0).parameters() == {"loc": 1.0, "scale": 2.0}
    assert NoiseSpec.uniform(-1.0, 1.0).parameters() == {"a": -1.0, "b": 1.0}


def test_normal_realization():
    d = realize(NoiseSpec.normal(1.0, 2.0))
    assert d.grid == GridSpec(-19.0, 21.0, 4097)
    assert d.mass == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(d.values - stats.norm.pdf(d.x, 1.0, 2.0))) <= 1e-10
    assert max(d.values[0], d.values[-1]) <= 1e-10 * d.values.max()


def test_laplace_realization():
    d = realize(NoiseSpec.laplace(0.0, 1.0))
    assert max(d.values[0], d.values[-1]) <= 1e-10 * d.values.max()
    ratio = d.values / stats.laplace.pdf(d.x)
    assert np.ptp(ratio) <= 1e-12
    assert ratio[0] == pytest.approx(1.0, rel=1e-4)
    moments = summarize(d)
    assert moments.mean == pytest.approx(0.0, abs=1e-12)
    assert moments.variance == pytest.approx(2.0, rel=1e-4)


def test_uniform_realization_is_exact():
    d = realize(NoiseSpec.uniform(-1.0, 1.0))
    assert d.mass == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(d.values[1:-1], 0.5, rtol=0, atol=1e-12)
    assert d.values[0] == pytest.approx(0.0, abs=1e-12)
    assert d.values[-1] == pytest.approx(0.0, abs=1e-12)
    c = cdf(d)
    inside = np.abs(d.x) <= 1.0 - d.step
    np.testing.assert_allclose(c[inside], (d.x[inside] + 1.0) / 2.0, atol=1e-12)


def test_mixture_realization():
    spec = NoiseSpec.mixture([(0.7, 0.0, 1.0), (0.3, 2.0, 0.5)])
    d = realize(spec)
    assert d.grid.lo == pytest.approx(-10.0)
    assert d.grid.hi == pytest.approx(10.0)
    assert summarize(d).mean == pytest.approx(0.6, abs=1e-9)
    assert summarize(d).sd == pytest.approx(spec.sd(), rel=1e-9)


def test_tabulated_keeps_its_grid():
    base = realize(NoiseSpec.normal())
    spec = NoiseSpec.tabulated(base.x, base.values)
    d = realize(spec, GridSpec(-3.0, 3.0, 101))
    assert d.grid.n_points == base.grid.n_points
    assert np.max(np.abs(d.values - base.values)) <= 1e-12


def test_explicit_grid_policy():
    grid = GridSpec(-20.0, 20.0, 8001)
    d = realize(NoiseSpec.normal(), grid)
    assert d.grid is grid
    assert summarize(d).variance == pytest.approx(1.0, abs=1e-9)


def test_truncating_grid_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="pivotal_predict.noise"):
        realize(NoiseSpec.normal(0.0, 5.0), GridSpec(-4.0, 4.0, 401))
    assert "truncated" in caplog.text


def test_auto_grid_uniform_straddles_edges():
    grid = auto_grid(NoiseSpec.uniform(0.0, 1.0), 9)
    assert grid.lo < 0.0 < grid.lo + grid.step
    assert grid.hi - grid.step < 1.0 < grid.hi
