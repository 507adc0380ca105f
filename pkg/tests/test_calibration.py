import numpy as np
import pytest

from fraccd import DomainError
from fraccd.calibration import fit_economy, fit_factor, relative_sse
from fraccd.grid import TimeGrid, Trajectory
from fraccd.growth import GrowthFactor, sample_trajectory
from fraccd.invariants import EconomySpec

GRID = TimeGrid(20.0, 49)  # 50 points on [0, 20]


def series(alpha, b, x0=1.0):
    return sample_trajectory(GrowthFactor(x0, b, alpha), GRID)


@pytest.mark.parametrize("alpha", [0.5, 0.85, 1.0])
@pytest.mark.parametrize("b", [0.01, 0.05, 0.2])
def test_identifiability(alpha, b):
    fit = fit_factor(series(alpha, b))
    assert abs(fit.factor.alpha - alpha) <= 0.01
    assert abs(fit.factor.b - b) <= 0.02 * b
    assert fit.sse <= fit.grid_sse


def test_exponential_example():
    fit = fit_factor(series(1.0, 0.05, 100.0))
    assert 0.99 <= fit.factor.alpha <= 1.0
    assert fit.factor.b == pytest.approx(0.05, rel=0.01)
    assert fit.factor.x0 == 100.0


def test_fractional_example():
    fit = fit_factor(series(0.85, 0.05))
    assert fit.factor.alpha == pytest.approx(0.85, abs=0.01)
    assert fit.factor.b == pytest.approx(0.05, rel=0.02)
    assert fit.converged
    assert fit.sse >= 0 and fit.n_evals > 625


def test_grid_nodes_not_better():
    s = series(0.7, 0.1)
    fit = fit_factor(s, grid_size=5)
    for a in np.linspace(0.1, 1.0, 5):
        for b in np.exp(np.linspace(np.log(1e-4), np.log(2.0), 5)):
            assert fit.sse <= relative_sse(s, a, b)


def test_deterministic():
    s = series(0.6, 0.2, 3.0)
    assert fit_factor(s) == fit_factor(s)


def test_constant_series():
    s = Trajectory(GRID.points, np.full(50, 4.0))
    fit = fit_factor(s)
    assert fit.factor.b == pytest.approx(1e-4, rel=1e-6)
    assert fit.sse < 1e-3
    # the optimum sits on the boundary; converged reports the simplex honestly
    assert isinstance(fit.converged, bool)


@pytest.mark.parametrize(
    "times, values",
    [
        ([0, 1, 2, 3], [1, 2, 3, 4]),
        ([0, 1, 2, 3, 4], [1, 2, 0, 4, 5]),
        ([1, 2, 3, 4, 5], [1, 2, 3, 4, 5]),
    ],
)
def test_bad_series(times, values):
    with pytest.raises(DomainError):
        fit_factor(Trajectory(times, values))


@pytest.mark.parametrize("ab, bb", [((0.5, 0.4), (0.01, 1)), ((0.5, 1.2), (0.01, 1)), ((0.1, 1), (0, 1)), ((0.1, 1), (2, 1))])
def test_bad_bounds(ab, bb):
    with pytest.raises(DomainError):
        fit_factor(series(0.8, 0.1), ab, bb)


def test_economy_roundtrip():
    truth = EconomySpec(GrowthFactor(1, 0.02, 0.9), GrowthFactor(2, 0.04, 0.8), GrowthFactor(1.5, 0.03, 0.85))
    fit = fit_economy(*(sample_trajectory(f, GRID) for f in (truth.labor, truth.capital, truth.output)))
    for got, want in zip((fit.economy.labor, fit.economy.capital, fit.economy.output), (truth.labor, truth.capital, truth.output)):
        assert got.alpha == pytest.approx(want.alpha, abs=0.01)
        assert got.b == pytest.approx(want.b, rel=0.02)
    assert fit.theta_from_crs
    assert fit.economy.theta == pytest.approx(1 / 3, rel=0.05)


def test_economy_exponential_crs():
    fs = [GrowthFactor(1, 0.02, 1), GrowthFactor(1, 0.04, 1), GrowthFactor(1, 0.03, 1)]
    fit = fit_economy(*(sample_trajectory(f, GRID) for f in fs))
    e = fit.economy
    total = e.theta * e.output.b / e.labor.b + (1 - e.theta) * e.output.b / e.capital.b
    assert total == pytest.approx(1.0, abs=1e-12)


def test_economy_equal_rates():
    s = series(0.8, 0.1)
    fit = fit_economy(s, s, series(0.8, 0.2))
    assert fit.economy.theta == 0.5
    assert not fit.theta_from_crs
