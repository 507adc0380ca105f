"""Least-squares calibration of ``(alpha, b)`` from observed growth series.

The initial level is pinned to the first observation; the remaining two
parameters minimise the sum of squared relative residuals

    sum_j ((x0 E_alpha(b t_j^alpha) - v_j) / v_j) ** 2

over a box. The search is a coarse grid scan followed by a Nelder-Mead
polish started from the best grid cell, both in coordinates scaled to
``[0, 1]`` (linear in ``alpha``, logarithmic in ``b``). Nothing is random,
so repeated fits are identical.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ._errors import DomainError, MLOverflowError
from .grid import Trajectory
from .growth import GrowthFactor
from .invariants import EconomySpec, crs_theta
from .mittag_leffler import ml_eval

__all__ = [
    "FitResult",
    "EconomyFit",
    "fit_factor",
    "fit_economy",
    "relative_sse",
    "DEFAULT_ALPHA_BOUNDS",
    "DEFAULT_B_BOUNDS",
]

DEFAULT_ALPHA_BOUNDS = (0.1, 1.0)
DEFAULT_B_BOUNDS = (1e-4, 2.0)
CONVERGED_DIAMETER = 1e-6


@dataclass(frozen=True)
class FitResult:
    factor: GrowthFactor
    sse: float
    n_evals: int
    converged: bool
    # best objective value found by the grid scan, kept for diagnostics
    grid_sse: float = math.nan


@dataclass(frozen=True)
class EconomyFit:
    economy: EconomySpec
    labor: FitResult
    capital: FitResult
    output: FitResult
    theta_from_crs: bool


def _check_bounds(bounds, name: str, upper: float | None = None) -> tuple[float, float]:
    lo, hi = (float(v) for v in bounds)
    if not (lo > 0 and hi >= lo and math.isfinite(hi)):
        raise DomainError(f"{name} bounds must satisfy 0 < lo <= hi < inf, got {bounds!r}")
    if upper is not None and hi > upper:
        raise DomainError(f"{name} bounds must not exceed {upper}, got {bounds!r}")
    return lo, hi


def _check_series(series: Trajectory) -> None:
    if len(series) < 5:
        raise DomainError(f"need at least 5 observations, got {len(series)}")
    if series.times[0] != 0.0:
        raise DomainError("the series must start at t = 0")
    if np.any(series.values <= 0):
        raise DomainError("observed levels must be strictly positive")


def relative_sse(series: Trajectory, alpha: float, b: float, x0: float | None = None) -> float:
    """Sum of squared relative residuals of ``x0 E_alpha(b t^alpha)`` against ``series``."""
    v = series.values
    x0 = v[0] if x0 is None else x0
    try:
        model = x0 * ml_eval(alpha, b * series.times**alpha)
    except MLOverflowError:
        return math.inf
    r = (model - v) / v
    return float(np.dot(r, r))


class _Objective:
    """Objective in scaled coordinates, counting evaluations."""

    def __init__(self, series, alpha_bounds, b_bounds):
        self.series = series
        self.a_lo, self.a_hi = alpha_bounds
        self.lb_lo, self.lb_hi = math.log(b_bounds[0]), math.log(b_bounds[1])
        self.n_evals = 0

    def params(self, u) -> tuple[float, float]:
        u0 = min(max(float(u[0]), 0.0), 1.0)
        u1 = min(max(float(u[1]), 0.0), 1.0)
        alpha = self.a_lo + u0 * (self.a_hi - self.a_lo)
        b = math.exp(self.lb_lo + u1 * (self.lb_hi - self.lb_lo))
        return min(alpha, 1.0), b

    def __call__(self, u) -> float:
        self.n_evals += 1
        return relative_sse(self.series, *self.params(u))


def _initial_simplex(best: np.ndarray, step: float) -> np.ndarray:
    simplex = [best]
    for i in range(2):
        v = best.copy()
        # step inwards from a face of the box
        v[i] = best[i] + step if best[i] + step <= 1.0 else best[i] - step
        simplex.append(v)
    return np.array(simplex)


def fit_factor(
    series: Trajectory,
    alpha_bounds=DEFAULT_ALPHA_BOUNDS,
    b_bounds=DEFAULT_B_BOUNDS,
    grid_size: int = 25,
    max_iter: int = 2000,
) -> FitResult:
    """Estimate ``(alpha, b)`` for one factor from ``series``.

    Parameters
    ----------
    series : Trajectory
        At least 5 strictly positive observations starting at ``t = 0``.
    alpha_bounds : (float, float)
        Search interval for the order, inside ``(0, 1]``.
    b_bounds : (float, float)
        Search interval for the growth coefficient, inside ``(0, inf)``.
    grid_size : int
        Points per axis in the initial scan.

    Returns
    -------
    FitResult
        ``converged`` is set when the final simplex diameter in scaled
        coordinates is below ``1e-6``.
    """
    _check_series(series)
    alpha_bounds = _check_bounds(alpha_bounds, "alpha", upper=1.0)
    b_bounds = _check_bounds(b_bounds, "b")
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")

    obj = _Objective(series, alpha_bounds, b_bounds)
    axis = np.linspace(0.0, 1.0, grid_size)
    best_u, best_f = None, math.inf
    for u0 in axis:
        for u1 in axis:
            f = obj((u0, u1))
            if f < best_f:
                best_u, best_f = np.array([u0, u1]), f

    step = 1.0 / (grid_size - 1)
    res = minimize(
        obj,
        best_u,
        method="Nelder-Mead",
        bounds=[(0.0, 1.0), (0.0, 1.0)],
        options={
            "initial_simplex": _initial_simplex(best_u, step),
            "xatol": 1e-9,
            "fatol": 1e-18,
            "maxiter": max_iter,
            "maxfev": 4 * max_iter,
        },
    )
    u_opt, f_opt = res.x, float(res.fun)
    if not f_opt <= best_f:
        u_opt, f_opt = best_u, best_f
    simplex = res.final_simplex[0]
    diameter = max(
        float(np.linalg.norm(simplex[i] - simplex[j]))
        for i in range(len(simplex))
        for j in range(i + 1, len(simplex))
    )
    alpha, b = obj.params(u_opt)
    factor = GrowthFactor(float(series.values[0]), b, alpha)
    return FitResult(factor, f_opt, obj.n_evals, diameter < CONVERGED_DIAMETER, best_f)


def fit_economy(
    labor_series: Trajectory,
    capital_series: Trajectory,
    output_series: Trajectory,
    alpha_bounds=DEFAULT_ALPHA_BOUNDS,
    b_bounds=DEFAULT_B_BOUNDS,
    **kwargs,
) -> EconomyFit:
    """Fit the three factors independently and choose ``theta``.

    ``theta`` is the constant-returns weight when the fitted labor and
    capital rates differ and that weight lies in ``(0, 1)``; otherwise it is
    0.5 and ``theta_from_crs`` is False.
    """
    fits = [
        fit_factor(s, alpha_bounds, b_bounds, **kwargs)
        for s in (labor_series, capital_series, output_series)
    ]
    b1, b2, b3 = (f.factor.b for f in fits)
    theta, from_crs = 0.5, False
    if b1 != b2:
        with warnings.catch_warnings():
            # an out-of-range weight is reported through theta_from_crs
            warnings.simplefilter("ignore")
            w = crs_theta(b1, b2, b3)
        if w.in_range:
            theta, from_crs = w.theta, True
    economy = EconomySpec(fits[0].factor, fits[1].factor, fits[2].factor, theta)
    return EconomyFit(economy, *fits, theta_from_crs=from_crs)
