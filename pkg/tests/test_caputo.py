import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccd import DomainError, UnsupportedGridError
from fraccd.caputo import (
    abm_max_error,
    caputo_l1,
    caputo_l1_all,
    solve_fode_abm,
    verify_eigenproperty,
)
from fraccd.grid import TimeGrid, Trajectory
from fraccd.mittag_leffler import ml_eval

from oracles import caputo_power


class TestGrid:
    def test_points(self):
        g = TimeGrid(1.0, 4)
        assert np.array_equal(g.points, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert g.step == 0.25
        assert g.refined(2).n_steps == 8

    @pytest.mark.parametrize("args", [(0.0, 4), (-1.0, 4), (1.0, 0), (1.0, 2.5), (math.inf, 3)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            TimeGrid(*args)

    def test_trajectory_validation(self):
        with pytest.raises(DomainError):
            Trajectory([0, 1, 1], [1, 2, 3])
        with pytest.raises(DomainError):
            Trajectory([0, 1], [1, math.nan])
        with pytest.raises(DomainError):
            Trajectory([0, 1, 2], [1, 2])
        traj = Trajectory([0, 1], [1, 2])
        with pytest.raises(ValueError):
            traj.values[0] = 5.0


class TestL1:
    @settings(max_examples=50, deadline=None)
    @given(
        alpha=st.floats(min_value=0.05, max_value=1.0),
        n=st.integers(min_value=1, max_value=60),
        c=st.floats(min_value=-1e6, max_value=1e6),
    )
    def test_annihilates_constants(self, alpha, n, c):
        traj = Trajectory.on_grid(TimeGrid(3.0, n), np.full(n + 1, c))
        assert np.all(caputo_l1_all(traj, alpha) == 0.0)
        assert caputo_l1(traj, alpha, n) == 0.0

    def test_linear_power_rule(self):
        g = TimeGrid(1.0, 1000)
        traj = Trajectory.on_grid(g, g.points)
        # Gamma(2)/Gamma(1.5) from 40-digit arithmetic
        assert caputo_l1(traj, 0.5, 1000) == pytest.approx(1.1283791670955126, rel=1e-12)

    def test_classical_limit_for_linear(self):
        g = TimeGrid(1.0, 1000)
        traj = Trajectory.on_grid(g, g.points)
        values = [caputo_l1(traj, a, 1000) for a in (0.9, 0.99, 0.999, 1.0)]
        gaps = [abs(v - 1.0) for v in values]
        assert gaps == sorted(gaps, reverse=True)
        assert values[-1] == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_quadratic_converges(self, alpha):
        errs = []
        for n in (200, 400):
            g = TimeGrid(1.0, n)
            traj = Trajectory.on_grid(g, g.points**2)
            errs.append(abs(caputo_l1(traj, alpha, n) - caputo_power(2, alpha, 1.0)))
        assert errs[1] < errs[0]
        assert errs[0] / errs[1] == pytest.approx(2 ** (2 - alpha), rel=0.1)

    def test_all_matches_single(self):
        g = TimeGrid(2.0, 37)
        traj = Trajectory.on_grid(g, np.sin(g.points) + g.points**1.5)
        d = caputo_l1_all(traj, 0.4)
        for i in (1, 5, 37):
            assert d[i] == pytest.approx(caputo_l1(traj, 0.4, i), rel=1e-12)

    @pytest.mark.parametrize("index", [0, 11, -1, 2.5])
    def test_bad_index(self, index):
        g = TimeGrid(1.0, 10)
        with pytest.raises(DomainError):
            caputo_l1(Trajectory.on_grid(g, g.points), 0.5, index)

    def test_non_uniform(self):
        traj = Trajectory([0.0, 0.1, 0.3, 0.6], [1.0, 2.0, 3.0, 4.0])
        with pytest.raises(UnsupportedGridError):
            caputo_l1(traj, 0.5, 2)
        with pytest.raises(UnsupportedGridError):
            caputo_l1_all(traj, 0.5)


class TestABM:
    def test_exponential_case(self):
        traj = solve_fode_abm(0.3, 1.0, 100.0, TimeGrid(1.0, 2000))
        assert traj.values[-1] == pytest.approx(134.9858807576003, rel=1e-6)

    def test_half_order(self):
        traj = solve_fode_abm(0.1, 0.5, 1.0, TimeGrid(1.0, 2000))
        # e^0.01 erfc(-0.1)
        assert traj.values[-1] == pytest.approx(1.1236433541992095, abs=1e-6)
        assert traj.values[-1] == pytest.approx(1.123645, abs=5e-6)

    @pytest.mark.parametrize("alpha", [0.3, 0.7, 1.0])
    def test_initial_condition(self, alpha):
        errs = [abs(solve_fode_abm(1.0, alpha, 2.0, TimeGrid(T, 20)).values[-1] - 2.0) for T in (1e-2, 1e-6, 1e-12)]
        assert errs == sorted(errs, reverse=True)
        assert errs[-1] < 1e-2

    def test_integer_x0(self):
        a = solve_fode_abm(1.0, 0.5, 1, TimeGrid(1.0, 50)).values
        b = solve_fode_abm(1.0, 0.5, 1.0, TimeGrid(1.0, 50)).values
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_tiny_grids(self, n):
        traj = solve_fode_abm(1.0, 0.3, 1.0, TimeGrid(1.0, n))
        assert len(traj) == n + 1 and np.all(np.isfinite(traj.values))

    def test_corrections_improve_low_order(self):
        g = TimeGrid(1.0, 500)
        exact = ml_eval(0.3, g.points**0.3)
        plain = solve_fode_abm(1.0, 0.3, 1.0, g, corrections=0).values
        fixed = solve_fode_abm(1.0, 0.3, 1.0, g).values
        assert np.max(np.abs(fixed - exact) / exact) < 0.1 * np.max(np.abs(plain - exact) / exact)

    @settings(max_examples=30, deadline=None)
    @given(
        alpha=st.floats(min_value=0.2, max_value=1.0),
        b=st.floats(min_value=0.01, max_value=20.0),
        x0=st.floats(min_value=0.1, max_value=100.0),
    )
    def test_positive_non_decreasing(self, alpha, b, x0):
        try:
            v = solve_fode_abm(b, alpha, x0, TimeGrid(1.0, 200)).values
        except OverflowError:
            return
        assert np.all(v > 0)
        assert np.all(np.diff(v) >= 0)

    @pytest.mark.parametrize("b, x0", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
    def test_rejects_non_growth(self, b, x0):
        with pytest.raises(DomainError):
            solve_fode_abm(b, 0.5, x0, TimeGrid(1.0, 10))

    def test_rejects_shifted_grid(self):
        with pytest.raises(DomainError):
            solve_fode_abm(1.0, 0.5, 1.0, TimeGrid(2.0, 10, t0=1.0))

    def test_max_error_helper(self):
        assert abm_max_error(1.0, 0.5, 1.0, TimeGrid(1.0, 2000)) < 1e-5


class TestEigenproperty:
    def test_half_order(self):
        assert verify_eigenproperty(1.0, 0.5, TimeGrid(1.0, 4000)) < 1e-2

    def test_refinement_shrinks_defect(self):
        d1 = verify_eigenproperty(1.0, 0.5, TimeGrid(1.0, 500))
        d2 = verify_eigenproperty(1.0, 0.5, TimeGrid(1.0, 1000))
        assert d1 / d2 == pytest.approx(2 ** 1.5, rel=0.15)

    def test_exponential_first_order(self):
        # backward differences of exp: defect ~ h / 2
        d = verify_eigenproperty(1.0, 1.0, TimeGrid(1.0, 1000))
        assert d == pytest.approx(5e-4, rel=0.01)


class TestABMSafeguards:
    def test_coarse_grid_falls_back_to_positive_scheme(self):
        g = TimeGrid(1.0, 200)
        v = solve_fode_abm(3.0, 0.21875, 1.0, g).values
        assert np.array_equal(v, solve_fode_abm(3.0, 0.21875, 1.0, g, corrections=0).values)
        assert np.all(v > 0) and np.all(np.diff(v) >= 0)

    def test_resolved_grid_keeps_corrections(self):
        g = TimeGrid(1.0, 200)
        assert not np.array_equal(
            solve_fode_abm(1.0, 0.3, 1.0, g).values, solve_fode_abm(1.0, 0.3, 1.0, g, corrections=0).values
        )

    def test_overflow_is_explicit(self):
        with pytest.raises(OverflowError):
            solve_fode_abm(50.0, 1.0, 1.0, TimeGrid(100.0, 1000))
