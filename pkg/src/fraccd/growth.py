"""Closed-form fractional growth trajectories ``x(t) = x0 E_alpha(b t^alpha)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import DomainError
from .grid import TimeGrid, Trajectory
from .mittag_leffler import FracOrder, ml_eval, ml_inverse

__all__ = [
    "GrowthFactor",
    "level_at",
    "sample_trajectory",
    "time_from_level",
    "semigroup_defect",
]


@dataclass(frozen=True)
class GrowthFactor:
    """Dynamics of one production factor.

    Attributes
    ----------
    x0 : float
        Level at ``t = 0``.
    b : float
        Growth coefficient, in units of ``time**-alpha`` so that
        ``b * t**alpha`` is dimensionless.
    alpha : float
        Fractional order in ``(0, 1]``; ``1`` is plain exponential growth.
    """

    x0: float
    b: float
    alpha: float

    def __post_init__(self):
        if not (self.x0 > 0 and math.isfinite(self.x0)):
            raise DomainError(f"x0 must be positive and finite, got {self.x0!r}")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f"b must be positive and finite, got {self.b!r}")
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "alpha", float(FracOrder(self.alpha)))

    def with_alpha(self, alpha: float) -> "GrowthFactor":
        return GrowthFactor(self.x0, self.b, alpha)


def _power(t: float, alpha: float) -> float:
    # math.pow keeps t**1 == t exactly and maps 0 to 0
    return math.pow(t, alpha)


def _check_time(t: float) -> float:
    t = float(t)
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError(f"time must be finite and non-negative, got {t!r}")
    return t


def level_at(factor: GrowthFactor, t: float) -> float:
    """Level ``x0 * E_alpha(b t^alpha)`` of ``factor`` at time ``t >= 0``."""
    t = _check_time(t)
    if t == 0.0:
        return factor.x0
    return factor.x0 * ml_eval(factor.alpha, factor.b * _power(t, factor.alpha))


def sample_trajectory(factor: GrowthFactor, grid: TimeGrid) -> Trajectory:
    """Evaluate :func:`level_at` at every point of ``grid``."""
    times = grid.points
    if times[0] < 0:
        raise DomainError("trajectory grids must start at t >= 0")
    values = np.array([level_at(factor, t) for t in times])
    return Trajectory(times, values)


def time_from_level(factor: GrowthFactor, x: float) -> float:
    """Time at which ``factor`` reaches level ``x``.

    Inverts :func:`level_at`: ``t = (E_alpha^{-1}(x / x0) / b) ** (1 / alpha)``.

    Raises
    ------
    DomainError
        If ``x < x0`` (level below initial value).
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"level must be finite, got {x!r}")
    if x < factor.x0:
        raise DomainError(f"level below initial value: {x!r} < x0={factor.x0!r}")
    s = ml_inverse(factor.alpha, x / factor.x0)
    return math.pow(s / factor.b, 1.0 / factor.alpha)


def semigroup_defect(alpha: float, b: float, t: float, s: float) -> float:
    """``E(b (t+s)^a) - E(b t^a) E(b s^a)``, zero exactly when the flow is a semigroup.

    Vanishes for ``alpha = 1`` (exponential law) and whenever ``t`` or ``s``
    is zero; it is non-zero for ``alpha < 1`` otherwise.
    """
    alpha = FracOrder(alpha)
    if not (b > 0 and math.isfinite(b)):
        raise DomainError(f"b must be positive and finite, got {b!r}")
    t = _check_time(t)
    s = _check_time(s)
    joint = ml_eval(alpha, b * _power(t + s, alpha))
    return joint - ml_eval(alpha, b * _power(t, alpha)) * ml_eval(alpha, b * _power(s, alpha))
