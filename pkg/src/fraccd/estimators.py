"""scikit-learn compatible wrappers around calibration and the production surface.

>>> import numpy as np
>>> from fraccd.estimators import FractionalGrowthRegressor
>>> t = np.linspace(0, 20, 50)
>>> reg = FractionalGrowthRegressor().fit(t[:, None], 100 * np.exp(0.05 * t))
>>> round(reg.alpha_, 6), round(reg.b_, 6)
(1.0, 0.05)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._errors import DomainError
from ._validation import check_level_pairs, check_series
from .calibration import DEFAULT_ALPHA_BOUNDS, DEFAULT_B_BOUNDS, fit_economy, fit_factor
from .growth import GrowthFactor
from .invariants import EconomySpec, y_composite
from .mittag_leffler import ml_eval

__all__ = ["FractionalGrowthRegressor", "GeneralizedCobbDouglas"]


class FractionalGrowthRegressor(RegressorMixin, BaseEstimator):
    """Fit ``x(t) = x0 E_alpha(b t^alpha)`` to one observed series.

    Parameters
    ----------
    alpha_bounds : tuple of float, default=(0.1, 1.0)
    b_bounds : tuple of float, default=(1e-4, 2.0)
    grid_size : int, default=25
        Points per axis of the coarse scan preceding Nelder-Mead.

    Attributes
    ----------
    alpha_, b_, x0_ : float
        Estimated order, rate and (pinned) initial level.
    factor_ : GrowthFactor
    sse_ : float
        Sum of squared relative residuals at the optimum.
    converged_ : bool
    n_evals_ : int
    """

    def __init__(self, alpha_bounds=DEFAULT_ALPHA_BOUNDS, b_bounds=DEFAULT_B_BOUNDS, grid_size=25):
        self.alpha_bounds = alpha_bounds
        self.b_bounds = b_bounds
        self.grid_size = grid_size

    def fit(self, X, y):
        """``X`` holds observation times (one column, starting at 0), ``y`` the levels."""
        series = check_series(X, y)
        result = fit_factor(series, self.alpha_bounds, self.b_bounds, grid_size=self.grid_size)
        self.factor_ = result.factor
        self.alpha_ = result.factor.alpha
        self.b_ = result.factor.b
        self.x0_ = result.factor.x0
        self.sse_ = result.sse
        self.converged_ = result.converged
        self.n_evals_ = result.n_evals
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "factor_")
        t = check_array(X, ensure_2d=False).reshape(-1)
        if np.any(t < 0):
            raise DomainError("prediction times must be non-negative")
        return self.x0_ * ml_eval(self.alpha_, self.b_ * t**self.alpha_)


class GeneralizedCobbDouglas(RegressorMixin, BaseEstimator):
    """Generalized production function ``Y(L, K)`` learned from factor histories.

    ``fit`` calibrates labor, capital and output dynamics from three series
    observed at common ``times``; ``predict`` evaluates the composite
    invariant at arbitrary bundles ``(L, K)`` with ``L >= L0``, ``K >= K0``.

    Parameters
    ----------
    theta : float or None, default=None
        Blending weight in ``(0, 1)``. ``None`` picks the constant-returns
        weight when it is admissible and 0.5 otherwise.
    alpha_bounds, b_bounds, grid_size
        Passed to the per-factor calibration.
    """

    def __init__(
        self, theta=None, alpha_bounds=DEFAULT_ALPHA_BOUNDS, b_bounds=DEFAULT_B_BOUNDS, grid_size=25
    ):
        self.theta = theta
        self.alpha_bounds = alpha_bounds
        self.b_bounds = b_bounds
        self.grid_size = grid_size

    def fit(self, X, y, times):
        """Calibrate from ``X = [[L, K], ...]``, ``y = Y`` sampled at ``times``."""
        X = check_array(X)
        if X.shape[1] != 2:
            raise DomainError(f"X must have columns (L, K), got {X.shape[1]} columns")
        labor = check_series(times, X[:, 0])
        capital = check_series(times, X[:, 1])
        output = check_series(times, y)
        fit = fit_economy(
            labor, capital, output, self.alpha_bounds, self.b_bounds, grid_size=self.grid_size
        )
        economy = fit.economy
        theta_from_crs = fit.theta_from_crs
        if self.theta is not None:
            economy = EconomySpec(economy.labor, economy.capital, economy.output, self.theta)
            theta_from_crs = False
        self.economy_ = economy
        self.theta_ = economy.theta
        self.theta_from_crs_ = theta_from_crs
        self.fits_ = (fit.labor, fit.capital, fit.output)
        self.n_features_in_ = 2
        return self

    @classmethod
    def from_economy(cls, economy: EconomySpec) -> "GeneralizedCobbDouglas":
        """An estimator already fitted to known dynamics."""
        est = cls(theta=economy.theta)
        est.economy_ = economy
        est.theta_ = economy.theta
        est.theta_from_crs_ = False
        est.fits_ = None
        est.n_features_in_ = 2
        return est

    def predict(self, X):
        check_is_fitted(self, "economy_")
        pairs = check_level_pairs(X)
        return np.array([y_composite(self.economy_, L, K) for L, K in pairs])

    @property
    def factors_(self) -> tuple[GrowthFactor, GrowthFactor, GrowthFactor]:
        check_is_fitted(self, "economy_")
        e = self.economy_
        return e.labor, e.capital, e.output
