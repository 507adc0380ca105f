r"""Mittag-Leffler functions on the real line.

The one-parameter function

.. math::

    E_\alpha(x) = \sum_{k=0}^\infty \frac{x^k}{\Gamma(\alpha k + 1)}

is the eigenfunction of the Caputo derivative of order :math:`\alpha` and
reduces to :math:`e^x` at :math:`\alpha = 1`. The two-parameter variant
:math:`E_{\alpha,\beta}` replaces :math:`\alpha k + 1` by :math:`\alpha k + \beta`.

Evaluation uses the Taylor series (compensated summation) for moderate
arguments and the exponential asymptotic expansion

.. math::

    E_{\alpha,\beta}(x) \sim \frac{1}{\alpha} x^{(1-\beta)/\alpha}
        \exp(x^{1/\alpha}) - \sum_{k\ge1} \frac{x^{-k}}{\Gamma(\beta - \alpha k)}

for large positive ones. Only :math:`0 < \alpha \le 1` is supported.
"""

from __future__ import annotations

import functools
import math
import sys
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, rgamma

from ._errors import DomainError, MLOverflowError

__all__ = [
    "FracOrder",
    "MLEvalReport",
    "ml_eval",
    "ml_eval2",
    "ml_eval_report",
    "ml_derivative",
    "ml_inverse",
]

MAX_TERMS = 500
SERIES_RTOL = 1e-16
# switch to the asymptotic branch once x**(1/alpha) exceeds this; exp(-36) < 1e-15
ASYMPTOTIC_Z = 36.0
MAX_CORRECTION_TERMS = 30

_EPS = sys.float_info.epsilon
_LOG_MAX = math.log(sys.float_info.max)


class FracOrder(float):
    """A fractional order restricted to ``0 < alpha <= 1``.

    Behaves as a plain ``float`` once constructed.

    >>> FracOrder(0.5)
    0.5
    """

    def __new__(cls, value: float) -> "FracOrder":
        v = float(value)
        if not (0.0 < v <= 1.0):
            raise DomainError(f"fractional order must satisfy 0 < alpha <= 1, got {value!r}")
        return super().__new__(cls, v)


class MLEvalReport(NamedTuple):
    """Value of a Mittag-Leffler evaluation together with diagnostics."""

    value: float
    terms_used: int
    branch: str  # "series", "asymptotic" or "exact_exp"
    est_abs_error: float


class _Eval(NamedTuple):
    # value is None when it does not fit in a double; log_value is always finite for x >= 0
    value: float | None
    log_value: float
    terms_used: int
    branch: str
    est_abs_error: float


@functools.lru_cache(maxsize=256)
def _log_gamma_table(alpha: float, beta: float) -> np.ndarray:
    k = np.arange(MAX_TERMS, dtype=float)
    table = gammaln(alpha * k + beta)
    table.setflags(write=False)
    return table


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"Mittag-Leffler argument must be finite, got {x!r}")
    return x


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"beta must be positive, got {beta!r}")
    return beta


def _series_terms(alpha: float, beta: float, x: float) -> np.ndarray:
    k = np.arange(MAX_TERMS, dtype=float)
    log_terms = k * math.log(abs(x)) - _log_gamma_table(alpha, beta)
    terms = np.exp(log_terms)
    if x < 0:
        terms[1::2] *= -1.0
    return terms


def _series(alpha: float, beta: float, x: float) -> tuple[float, int, float] | None:
    """Sum the power series; ``None`` when the term cap is reached first."""
    if x == 0.0:
        return float(rgamma(beta)), 1, 0.0
    terms = _series_terms(alpha, beta, x)
    partial = np.cumsum(terms)
    if x > 0:
        # terms are log-concave in k, so the first tiny term is past the peak
        small = terms[1:] < SERIES_RTOL * partial[:-1]
    else:
        peak = int(np.argmax(np.abs(terms)))
        scale = np.maximum.accumulate(np.abs(partial))
        small = np.abs(terms[1:]) < SERIES_RTOL * np.maximum(scale[:-1], 1e-300)
        small[:peak] = False
    hits = np.flatnonzero(small)
    if hits.size == 0:
        return None
    n = int(hits[0]) + 1
    value = math.fsum(terms[:n])
    biggest = float(np.max(np.abs(terms[:n])))
    err = abs(float(terms[n])) + n * _EPS * max(abs(value), biggest)
    return value, n, err


def _corrections(alpha: float, beta: float, x: float) -> tuple[float, int, float]:
    """Algebraic tail ``sum_k x**-k / Gamma(beta - alpha k)`` and the first omitted term."""
    total = 0.0
    prev = math.inf
    used = 0
    omitted = 0.0
    for k in range(1, MAX_CORRECTION_TERMS + 1):
        term = x ** (-k) * float(rgamma(beta - alpha * k))
        # asymptotic series: stop once terms start growing
        if term != 0.0 and abs(term) > prev:
            omitted = abs(term)
            break
        total += term
        used = k
        if term != 0.0:
            prev = abs(term)
    return total, used, omitted


def _asymptotic_pos(alpha: float, beta: float, x: float) -> _Eval:
    z = x ** (1.0 / alpha)
    log_main = z + (1.0 - beta) * math.log(z) - math.log(alpha)
    corr, used, omitted = _corrections(alpha, beta, x)
    rel = corr * math.exp(-log_main)
    log_value = log_main + math.log1p(-rel)
    value = None
    if log_value <= _LOG_MAX:
        value = math.exp(log_main) - corr
    main_err = _EPS * (1.0 + abs(log_main))
    err = omitted + main_err * (value if value is not None else math.inf)
    return _Eval(value, log_value, 1 + used, "asymptotic", err)


def _evaluate(alpha: float, beta: float, x: float) -> _Eval:
    if alpha == 1.0 and beta == 1.0:
        value = math.exp(x) if x <= _LOG_MAX else None
        log_value = x
        err = 0.5 * _EPS * value if value is not None else math.inf
        return _Eval(value, log_value, 1, "exact_exp", err)

    if x > 0 and x ** (1.0 / alpha) >= ASYMPTOTIC_Z:
        return _asymptotic_pos(alpha, beta, x)

    res = _series(alpha, beta, x)
    if res is not None:
        value, n, err = res
        log_value = math.log(value) if value > 0 else -math.inf
        return _Eval(value, log_value, n, "series", err)

    if x > 0:
        return _asymptotic_pos(alpha, beta, x)
    # negative axis: the exponential part is absent for 0 < alpha <= 1
    corr, used, omitted = _corrections(alpha, beta, x)
    value = -corr
    log_value = math.log(value) if value > 0 else -math.inf
    return _Eval(value, log_value, used, "asymptotic", omitted)


def _vectorize(func, alpha, beta, x):
    if np.ndim(x) == 0:
        return func(alpha, beta, x)
    arr = np.asarray(x, dtype=float)
    out = np.array([func(alpha, beta, xi) for xi in arr.ravel()])
    return out.reshape(arr.shape)


def _value(alpha: float, beta: float, x: float) -> float:
    res = _evaluate(alpha, beta, _check_x(x))
    if res.value is None:
        raise MLOverflowError(
            f"E_{{{alpha},{beta}}}({x}) exceeds the double range (log value {res.log_value:.6g})"
        )
    return res.value


def ml_eval_report(alpha: float, x: float, beta: float = 1.0) -> MLEvalReport:
    """Evaluate :math:`E_{\\alpha,\\beta}(x)` and report how it was computed.

    Raises
    ------
    MLOverflowError
        If the value does not fit in a double.
    """
    alpha = FracOrder(alpha)
    beta = _check_beta(beta)
    res = _evaluate(alpha, beta, _check_x(x))
    if res.value is None:
        raise MLOverflowError(f"E_{{{alpha},{beta}}}({x}) exceeds the double range")
    return MLEvalReport(res.value, res.terms_used, res.branch, res.est_abs_error)


def ml_eval(alpha: float, x):
    """One-parameter Mittag-Leffler function :math:`E_\\alpha(x)`.

    Parameters
    ----------
    alpha : float
        Order in ``(0, 1]``.
    x : float or array_like
        Finite argument(s). The accuracy target (relative error below
        1e-10) covers ``x >= 0``; negative arguments are summed by the
        series without a guarantee.

    Returns
    -------
    float or ndarray

    Raises
    ------
    DomainError
        For an invalid order or a non-finite argument.
    MLOverflowError
        If the value exceeds the double range.
    """
    alpha = FracOrder(alpha)
    return _vectorize(_value, alpha, 1.0, x)


def ml_eval2(alpha: float, beta: float, x):
    """Two-parameter Mittag-Leffler function :math:`E_{\\alpha,\\beta}(x)`."""
    alpha = FracOrder(alpha)
    beta = _check_beta(beta)
    return _vectorize(_value, alpha, beta, x)


def ml_derivative(alpha: float, x):
    """Derivative of :math:`E_\\alpha`, computed as :math:`E_{\\alpha,\\alpha}(x)/\\alpha`."""
    alpha = FracOrder(alpha)
    if alpha == 1.0:
        return _vectorize(_value, 1.0, 1.0, x)
    return _vectorize(_value, alpha, alpha, x) / alpha


def _log_ml(alpha: float, x: float) -> float:
    return _evaluate(alpha, 1.0, x).log_value


def _log_ml_slope(alpha: float, x: float) -> float:
    # d/dx log E_alpha(x) = E_{alpha,alpha}(x) / (alpha E_alpha(x))
    num = _evaluate(alpha, alpha, x).log_value
    den = _evaluate(alpha, 1.0, x).log_value
    return math.exp(num - den) / alpha


def ml_inverse(alpha: float, y: float) -> float:
    """Invert :math:`E_\\alpha` on its growth branch.

    Returns the unique ``x >= 0`` with ``E_alpha(x) == y``. The root is
    bracketed by doubling, then refined with Newton steps on
    ``log E_alpha(x) - log y``; a step leaving the bracket is replaced by
    bisection.

    Raises
    ------
    DomainError
        If ``y < 1`` (below the growth branch) or ``y`` is not finite.
    """
    alpha = FracOrder(alpha)
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"inverse Mittag-Leffler argument must be finite, got {y!r}")
    if y < 1.0:
        raise DomainError(f"y={y!r} is below growth branch (requires y >= 1)")
    if y == 1.0:
        return 0.0
    if alpha == 1.0:
        return math.log(y)

    log_y = math.log(y)
    lo, hi = 0.0, 1.0
    while _log_ml(alpha, hi) < log_y:
        lo, hi = hi, 2.0 * hi

    if alpha * y > math.e:
        guess = math.log(alpha * y) ** alpha
    else:
        guess = (y - 1.0) * math.gamma(1.0 + alpha)
    x = min(max(guess, lo), hi)
    if not lo < x < hi:
        x = 0.5 * (lo + hi)

    for _ in range(200):
        f = _log_ml(alpha, x) - log_y
        if f == 0.0:
            return x
        if f > 0:
            hi = x
        else:
            lo = x
        x_new = x - f / _log_ml_slope(alpha, x)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 2.0 * _EPS * x_new or hi - lo <= 2.0 * _EPS * hi:
            return x_new
        x = x_new
    return x
