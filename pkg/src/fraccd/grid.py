"""Time grids and sampled trajectories."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import DomainError


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_j = t0 + j*h`` with ``h = (t_end - t0) / n_steps``."""

    t_end: float
    n_steps: int
    t0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.t_end)):
            raise DomainError("grid end points must be finite")
        if not self.t_end > self.t0:
            raise DomainError(f"t_end={self.t_end!r} must exceed t0={self.t0!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise DomainError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def step(self) -> float:
        return (self.t_end - self.t0) / self.n_steps

    @property
    def points(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(self.n_steps + 1)

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.t_end, self.n_steps * factor, self.t0)


@dataclass(frozen=True)
class Trajectory:
    """Levels ``values[j]`` sampled at ``times[j]``.

    ``times`` may come from a :class:`TimeGrid` or be given explicitly
    (e.g. read from a CSV file); it must be strictly increasing.
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.shape != t.shape:
            raise DomainError("times and values must be 1-d arrays of equal length")
        if t.size == 0:
            raise DomainError("trajectory is empty")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise DomainError("trajectory contains non-finite entries")
        if np.any(np.diff(t) <= 0):
            raise DomainError("times must be strictly increasing")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def on_grid(cls, grid: TimeGrid, values) -> "Trajectory":
        return cls(grid.points, values)

    def __len__(self) -> int:
        return self.times.size

    @property
    def is_uniform(self) -> bool:
        if self.times.size < 2:
            return False
        d = np.diff(self.times)
        h = (self.times[-1] - self.times[0]) / d.size
        return bool(np.allclose(d, h, rtol=1e-9, atol=0.0))

    @property
    def step(self) -> float:
        return float((self.times[-1] - self.times[0]) / (self.times.size - 1))
