r"""Time-independent invariants of the fractional growth system.

Each factor obeys ``x(t) = x0 E_a(b t^a)``, so its elapsed time can be read
off its level as ``tau(x) = (E_a^{-1}(x / x0) / b) ** (1 / a)``. Equating the
clocks of labor, capital and output eliminates ``t`` and leaves a surface in
``(L, K, Y)``-space. The weighted blend

.. math::

    Y = Y_0 E_{a_3}\big[\theta b_3 \tau_L^{a_3} + (1-\theta) b_3 \tau_K^{a_3}\big]

is the generalized production function; at ``a_i = 1`` it becomes the
Cobb-Douglas form ``A L^{\theta b_3/b_1} K^{(1-\theta) b_3/b_2}``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from ._errors import DegenerateRatesError, DomainError
from .grid import TimeGrid
from .growth import GrowthFactor, level_at, time_from_level
from .mittag_leffler import ml_eval

__all__ = [
    "EconomySpec",
    "SurfacePoint",
    "CRSWeight",
    "y_from_labor",
    "y_from_capital",
    "y_composite",
    "invariant_residuals",
    "classical_cd",
    "classical_limit_params",
    "crs_theta",
    "limit_convergence_probe",
    "surface_sample",
    "surface_residuals",
]


@dataclass(frozen=True)
class EconomySpec:
    """Labor, capital and output dynamics plus the blending weight ``theta``."""

    labor: GrowthFactor
    capital: GrowthFactor
    output: GrowthFactor
    theta: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise DomainError(f"theta must lie in (0, 1), got {self.theta!r}")
        object.__setattr__(self, "theta", float(self.theta))

    def with_alphas(self, alpha: float) -> "EconomySpec":
        """Copy with every fractional order set to ``alpha``."""
        return replace(
            self,
            labor=self.labor.with_alpha(alpha),
            capital=self.capital.with_alpha(alpha),
            output=self.output.with_alpha(alpha),
        )

    def levels_at(self, t: float) -> "SurfacePoint":
        return SurfacePoint(
            level_at(self.labor, t), level_at(self.capital, t), level_at(self.output, t)
        )


class SurfacePoint(NamedTuple):
    L: float
    K: float
    Y: float


class CRSWeight(NamedTuple):
    """Constant-returns weight; ``in_range`` is False when ``theta`` leaves (0, 1)."""

    theta: float
    in_range: bool


def _output_clock_term(econ: EconomySpec, source: GrowthFactor, level: float) -> float:
    # b3 * tau(level)**a3, the output-clock argument implied by one input factor
    if level < source.x0:
        raise DomainError(f"level {level!r} is below the base level {source.x0!r}")
    tau = time_from_level(source, level)
    return econ.output.b * math.pow(tau, econ.output.alpha)


def _output_from_arg(econ: EconomySpec, arg: float) -> float:
    return econ.output.x0 * ml_eval(econ.output.alpha, arg)


def y_from_labor(econ: EconomySpec, L: float) -> float:
    """Output consistent with labor level ``L`` on the invariant surface."""
    return _output_from_arg(econ, _output_clock_term(econ, econ.labor, L))


def y_from_capital(econ: EconomySpec, K: float) -> float:
    """Output consistent with capital level ``K`` on the invariant surface."""
    return _output_from_arg(econ, _output_clock_term(econ, econ.capital, K))


def y_composite(econ: EconomySpec, L: float, K: float) -> float:
    """Generalized production function ``Y(L, K)``.

    Defined for any bundle with ``L >= L0`` and ``K >= K0``. When ``(L, K)``
    lies on the model trajectory the result is the output level at the same
    time, whatever ``theta`` is.
    """
    from_l = _output_clock_term(econ, econ.labor, L)
    from_k = _output_clock_term(econ, econ.capital, K)
    theta = econ.theta
    return _output_from_arg(econ, theta * from_l + (1.0 - theta) * from_k)


def invariant_residuals(econ: EconomySpec, t: float) -> tuple[float, float]:
    """Differences between the times recovered from ``L(t)``, ``K(t)`` and ``Y(t)``.

    Returns ``(tau_L - tau_K, tau_L - tau_Y)``; both vanish up to rounding.
    """
    p = econ.levels_at(t)
    tau_l = time_from_level(econ.labor, p.L)
    tau_k = time_from_level(econ.capital, p.K)
    tau_y = time_from_level(econ.output, p.Y)
    return tau_l - tau_k, tau_l - tau_y


def classical_cd(A: float, betaL: float, betaK: float, L: float, K: float) -> float:
    """Cobb-Douglas output ``A * L**betaL * K**betaK``."""
    for name, v in (("A", A), ("L", L), ("K", K)):
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name} must be positive and finite, got {v!r}")
    return A * L**betaL * K**betaK


def classical_limit_params(econ: EconomySpec) -> tuple[float, float, float]:
    """``(A, betaL, betaK)`` of the Cobb-Douglas form reached as every order tends to 1."""
    b1, b2, b3 = econ.labor.b, econ.capital.b, econ.output.b
    beta_l = econ.theta * b3 / b1
    beta_k = (1.0 - econ.theta) * b3 / b2
    A = econ.output.x0 / (econ.labor.x0**beta_l * econ.capital.x0**beta_k)
    return A, beta_l, beta_k


def crs_theta(b1: float, b2: float, b3: float) -> CRSWeight:
    """Weight giving constant returns to scale in the classical limit.

    ``theta = b1 (b2 - b3) / (b3 (b2 - b1))`` makes
    ``theta b3/b1 + (1 - theta) b3/b2 == 1``. A value outside ``(0, 1)`` is
    returned with ``in_range=False`` and a warning.

    Raises
    ------
    DegenerateRatesError
        If ``b1 == b2``.
    """
    for name, v in (("b1", b1), ("b2", b2), ("b3", b3)):
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name} must be positive and finite, got {v!r}")
    if b1 == b2:
        raise DegenerateRatesError("b1 == b2: the constant-returns weight is undefined")
    theta = b1 * (b2 - b3) / (b3 * (b2 - b1))
    in_range = 0.0 < theta < 1.0
    if not in_range:
        warnings.warn(f"constant-returns weight {theta!r} lies outside (0, 1)", stacklevel=2)
    return CRSWeight(theta, in_range)


def limit_convergence_probe(
    econ_base: EconomySpec, L: float, K: float, eps_list: Sequence[float]
) -> list[float]:
    """Relative gap between ``y_composite`` at orders ``1 - eps`` and the classical limit.

    For each ``eps`` all three orders are set to ``1 - eps``; the result is
    compared with :func:`classical_cd` using :func:`classical_limit_params`.
    """
    limit = classical_cd(*classical_limit_params(econ_base), L, K)
    errors = []
    for eps in eps_list:
        if not 0.0 <= eps < 0.5:
            raise DomainError(f"eps must lie in [0, 0.5), got {eps!r}")
        y = y_composite(econ_base.with_alphas(1.0 - eps), L, K)
        errors.append(abs(y - limit) / limit)
    return errors


def surface_sample(econ: EconomySpec, t_grid: TimeGrid) -> list[SurfacePoint]:
    """``(L(t), K(t), Y(t))`` at every grid time."""
    return [econ.levels_at(t) for t in t_grid.points]


def surface_residuals(econ: EconomySpec, points: Sequence[SurfacePoint]) -> np.ndarray:
    """``|y_composite(L, K) - Y| / Y`` for each point."""
    return np.array([abs(y_composite(econ, p.L, p.K) - p.Y) / p.Y for p in points])
