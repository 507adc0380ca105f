r"""Numerical Caputo calculus, independent of the Mittag-Leffler code path.

Two discretisations are provided:

* the L1 scheme for the Caputo derivative of a sampled function,
* the fractional Adams-Bashforth-Moulton predictor-corrector for the
  linear initial-value problem :math:`{}^C D^\alpha x = b x`, :math:`x(0) = x_0`.

They serve as oracles: the closed-form growth trajectories must satisfy the
differential equation that these schemes discretise.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from ._errors import DomainError, UnsupportedGridError
from .grid import TimeGrid, Trajectory
from .mittag_leffler import FracOrder, ml_eval

__all__ = [
    "TimeGrid",
    "Trajectory",
    "caputo_l1",
    "caputo_l1_all",
    "solve_fode_abm",
    "verify_eigenproperty",
    "abm_max_error",
]


def _l1_kernel(alpha: float, n: int) -> np.ndarray:
    # w_m = (m+1)^(1-alpha) - m^(1-alpha); 0^0 is taken as its limit 0 so alpha=1 gives backward differences
    m = np.arange(n, dtype=float)
    p = 1.0 - alpha
    lower = m**p
    lower[0] = 0.0
    return (m + 1.0) ** p - lower


def _require_uniform(traj: Trajectory) -> float:
    if len(traj) < 2 or not traj.is_uniform:
        raise UnsupportedGridError("the L1 scheme is implemented for uniform grids only")
    return traj.step


def caputo_l1_all(traj: Trajectory, alpha: float) -> np.ndarray:
    """L1 approximation of the Caputo derivative at every grid index.

    Returns an array ``d`` of length ``len(traj)`` with ``d[0] = 0`` and
    ``d[n]`` the approximation at ``times[n]``.
    """
    alpha = FracOrder(alpha)
    h = _require_uniform(traj)
    df = np.diff(traj.values)
    w = _l1_kernel(alpha, df.size)
    scale = h ** (-alpha) / math.gamma(2.0 - alpha)
    # d[n] = sum_{j<n} w_{n-1-j} df_j, a causal convolution
    d = np.empty(len(traj))
    d[0] = 0.0
    d[1:] = scale * np.convolve(w, df)[: df.size]
    return d


def caputo_l1(traj: Trajectory, alpha: float, index: int) -> float:
    """L1-scheme Caputo derivative of the sampled function at ``times[index]``.

    Parameters
    ----------
    traj : Trajectory
        Samples on a uniform grid.
    alpha : float
        Order in ``(0, 1]``.
    index : int
        Grid index, ``1 <= index <= len(traj) - 1``.

    Notes
    -----
    Exact for constants (every difference vanishes); converges with order
    ``2 - alpha`` for smooth functions.
    """
    alpha = FracOrder(alpha)
    h = _require_uniform(traj)
    n = len(traj) - 1
    if int(index) != index or not 1 <= index <= n:
        raise DomainError(f"index must lie in [1, {n}], got {index!r}")
    index = int(index)
    df = np.diff(traj.values[: index + 1])
    w = _l1_kernel(alpha, index)[::-1]
    return float(h ** (-alpha) / math.gamma(2.0 - alpha) * np.dot(w, df))


def _check_growth(b: float, x0: float | None = None) -> None:
    if not (b > 0 and math.isfinite(b)):
        raise DomainError(f"growth rate b must be positive, got {b!r}")
    if x0 is not None and not (x0 > 0 and math.isfinite(x0)):
        raise DomainError(f"initial level x0 must be positive, got {x0!r}")


def _correction_exponents(alpha: float, count: int) -> list[float]:
    # 0 and 1 are already integrated exactly; keep them so the corrections preserve that
    out = [0.0, 1.0]
    r = 1
    while r * alpha < 2.0 and len(out) < count + 2:
        e = r * alpha
        if abs(e - round(e)) > 1e-12:
            out.append(e)
        r += 1
    return sorted(out)


def _starting_weights(alpha, n, exponents, b_w, a_w, a0):
    """Correction weights making both product rules exact for ``t**e``, ``e`` in ``exponents``.

    Returns ``(pred, corr)``, each of shape ``(len(exponents), n + 1)``; column
    ``k`` holds the weights on samples ``0..s`` for the value at ``t_k``
    (unit step; the caller scales by ``h**alpha``).
    """
    s1 = len(exponents)
    j = np.arange(n + 1, dtype=float)
    steps = j[1:]
    moments = np.array([[q**e if q > 0 else float(e == 0.0) for q in range(s1)] for e in exponents])
    res_p = np.empty((s1, n))
    res_c = np.empty((s1, n))
    g_p = math.gamma(alpha + 1.0)
    g_c = math.gamma(alpha + 2.0)
    for r, e in enumerate(exponents):
        g = j**e
        exact = np.exp(gammaln(e + 1.0) - gammaln(e + alpha + 1.0)) * steps ** (e + alpha)
        pred = np.convolve(b_w[:n], g[:n])[:n] / g_p
        hist = np.zeros(n)
        if n > 1:
            hist[1:] = np.convolve(a_w[:n], g[1:n])[: n - 1]
        corr = (a0[:n] * g[0] + hist + g[1:]) / g_c
        res_p[r] = exact - pred
        res_c[r] = exact - corr
    w_p = np.zeros((s1, n + 1))
    w_c = np.zeros((s1, n + 1))
    w_p[:, 1:] = np.linalg.solve(moments, res_p)
    w_c[:, 1:] = np.linalg.solve(moments, res_c)
    return w_p, w_c


def solve_fode_abm(
    b: float, alpha: float, x0: float, grid: TimeGrid, corrections: int = 3
) -> Trajectory:
    """Solve ``D^alpha x = b x``, ``x(0) = x0`` by the fractional ABM method.

    Predictor: fractional rectangle rule; corrector: fractional trapezoid
    rule, one correction per step. The solution behaves like ``t**alpha``
    near the origin, which limits the plain scheme to order ``2 alpha``
    there; ``corrections`` starting weights (Lubich-type) make both rules
    exact for the first non-integer powers ``alpha, 2 alpha, ...`` and
    restore order ``min(2, 1 + alpha)`` over the whole grid. The first few
    values, which the starting weights couple together, are obtained from
    the corrector as one small linear system. ``corrections=0`` gives the
    textbook scheme.

    The starting weights are not positive. On a grid too coarse for the
    dynamics (``b h**alpha`` of order one) they can produce a trajectory
    that dips or turns negative, which the exact solution never does; the
    solve is then repeated with the textbook scheme, whose weights are all
    positive.

    Raises
    ------
    OverflowError
        If the solution exceeds the double range on the grid.
    """
    alpha = FracOrder(alpha)
    _check_growth(b, x0)
    if grid.t0 != 0.0:
        raise DomainError("the initial-value problem is posed from t0 = 0")
    with np.errstate(over="ignore", invalid="ignore"):
        x = _abm(b, alpha, float(x0), grid, corrections)
        if corrections > 0 and not (np.all(x > 0) and np.all(np.diff(x) >= 0)):
            x = _abm(b, alpha, float(x0), grid, 0)
    if not np.all(np.isfinite(x)):
        raise OverflowError(f"ABM solution exceeds the double range before t={grid.t_end!r}")
    return Trajectory.on_grid(grid, x)


def _abm(b: float, alpha: float, x0: float, grid: TimeGrid, corrections: int) -> np.ndarray:
    n = grid.n_steps
    h = grid.step

    m = np.arange(n + 1, dtype=float)
    # predictor weights (m+1)^a - m^a with m = k - j
    b_w = (m + 1.0) ** alpha - m**alpha
    # corrector weights for 1 <= j <= k with m = k - j, and for j = 0
    a_w = (m + 2.0) ** (alpha + 1) + m ** (alpha + 1) - 2.0 * (m + 1.0) ** (alpha + 1)
    a0 = m ** (alpha + 1) - (m - alpha) * (m + 1.0) ** alpha
    g_p = math.gamma(alpha + 1.0)
    g_c = math.gamma(alpha + 2.0)
    ha = h**alpha

    exponents = []
    if alpha < 1.0 and corrections > 0:
        exponents = _correction_exponents(alpha, corrections)[: n + 1]
    s = len(exponents) - 1 if exponents else 0

    x = np.empty(n + 1)
    f = np.empty(n + 1)
    x[0] = x0
    f[0] = b * x0
    w_p = w_c = None
    if s > 0:
        w_p, w_c = _starting_weights(alpha, n, exponents, b_w, a_w, a0)
        # corrector equations for x_1..x_s, linear because the right-hand side is b x
        lhs = np.eye(s)
        rhs = np.full(s, x0)
        for i in range(s):
            k = i + 1
            rhs[i] += ha * f[0] * (a0[k - 1] / g_c + w_c[0, k])
            for j in range(1, k):
                lhs[i, j - 1] -= ha * b * a_w[k - 1 - j] / g_c
            lhs[i, k - 1] -= ha * b / g_c
            lhs[i, :] -= ha * b * w_c[1:, k]
        x[1 : s + 1] = np.linalg.solve(lhs, rhs)
        f[1 : s + 1] = b * x[1 : s + 1]

    for k in range(s, n):
        start = f[: s + 1]
        pred = x0 + ha * np.dot(b_w[k::-1], f[: k + 1]) / g_p
        tail = np.dot(a_w[k - 1 :: -1], f[1 : k + 1]) if k > 0 else 0.0
        corr = a0[k] * f[0] + tail
        if s > 0:
            pred += ha * np.dot(w_p[:, k + 1], start)
            x[k + 1] = x0 + ha * ((corr + b * pred) / g_c + np.dot(w_c[:, k + 1], start))
        else:
            x[k + 1] = x0 + ha * (corr + b * pred) / g_c
        f[k + 1] = b * x[k + 1]
    return x


def abm_max_error(b: float, alpha: float, x0: float, grid: TimeGrid) -> float:
    """Largest relative gap between the ABM solution and ``x0 E_alpha(b t^alpha)``."""
    traj = solve_fode_abm(b, alpha, x0, grid)
    exact = x0 * ml_eval(alpha, b * traj.times**alpha)
    return float(np.max(np.abs(traj.values - exact) / exact))


def verify_eigenproperty(b: float, alpha: float, grid: TimeGrid) -> float:
    """Max relative defect of ``D^alpha E_alpha(b t^alpha) = b E_alpha(b t^alpha)``.

    The Caputo derivative of the sampled closed form is taken with the L1
    scheme; the defect is measured on ``t >= t0 + 0.1 (t_end - t0)`` only,
    away from the weak singularity of the kernel at the origin.
    """
    alpha = FracOrder(alpha)
    _check_growth(b)
    t = grid.points
    values = ml_eval(alpha, b * t**alpha)
    d = caputo_l1_all(Trajectory(t, values), alpha)
    window = t >= grid.t0 + 0.1 * (grid.t_end - grid.t0)
    window[0] = False
    target = b * values[window]
    return float(np.max(np.abs(d[window] - target) / target))
