"""Fractional (Caputo / Mittag-Leffler) growth dynamics and the generalized
Cobb-Douglas production functions obtained from their time-independent
invariants."""

__version__ = "0.1.0"

from ._errors import DegenerateRatesError, DomainError, MLOverflowError, UnsupportedGridError
from .calibration import EconomyFit, FitResult, fit_economy, fit_factor
from .caputo import caputo_l1, caputo_l1_all, solve_fode_abm, verify_eigenproperty
from .grid import TimeGrid, Trajectory
from .growth import GrowthFactor, level_at, sample_trajectory, semigroup_defect, time_from_level
from .invariants import (
    CRSWeight,
    EconomySpec,
    SurfacePoint,
    classical_cd,
    classical_limit_params,
    crs_theta,
    invariant_residuals,
    limit_convergence_probe,
    surface_sample,
    y_composite,
    y_from_capital,
    y_from_labor,
)
from .mittag_leffler import (
    FracOrder,
    MLEvalReport,
    ml_derivative,
    ml_eval,
    ml_eval2,
    ml_eval_report,
    ml_inverse,
)
