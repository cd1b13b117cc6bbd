"""Special functions used by the closed-form heat-transfer solutions.

Scalar error function, complementary error function, and exponential
integral E1, with input validation and stated accuracy targets. Accuracy
is tight enough that downstream temperature errors stay below 0.001 degC
on a 235 degC span.
"""

from __future__ import annotations

import math

__all__ = ["erf", "erfc", "exp_integral_e1"]

# Euler-Mascheroni constant, used by the E1 power series.
_EULER_GAMMA = 0.5772156649015328606

_E1_MAX_ITER = 200


def _require_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


def erf(x: float) -> float:
    """Error function erf(x) = (2/sqrt(pi)) * integral_0^x exp(-u^2) du.

    Absolute error <= 1e-12 over the reals. Odd in x; saturates to +-1
    for |x| >= 6 (the true value is within one double-precision ulp of
    +-1 there).

    Parameters
    ----------
    x : float
        Argument. Must be finite.

    Returns
    -------
    float
        erf(x), in (-1, 1) for finite x (up to saturation).
    """
    x = _require_finite(x, "x")
    if x >= 6.0:
        return 1.0
    if x <= -6.0:
        return -1.0
    return math.erf(x)


def erfc(x: float) -> float:
    """Complementary error function erfc(x) = 1 - erf(x).

    Computed directly rather than by subtraction from 1, so the result
    keeps relative accuracy (<= 1e-10 on [0, 6]) even where erf(x) is
    within rounding of 1, e.g. erfc(6) ~ 2.15e-17 is returned nonzero.

    Parameters
    ----------
    x : float
        Argument. Must be finite.

    Returns
    -------
    float
        erfc(x), positive for all finite x.
    """
    x = _require_finite(x, "x")
    return math.erfc(x)


def _e1_series(x: float) -> float:
    # Power series -gamma - ln x + sum_k (-1)^(k+1) x^k / (k k!),
    # rapidly convergent for x <= 1.
    total = -_EULER_GAMMA - math.log(x)
    term = 1.0
    for k in range(1, _E1_MAX_ITER):
        term *= -x / k
        contribution = -term / k
        total += contribution
        if abs(contribution) < 1e-18 * max(abs(total), 1e-30):
            return total
    raise ArithmeticError(f"E1 series failed to converge at x={x}")


def _e1_continued_fraction(x: float) -> float:
    # Modified Lentz evaluation of the standard continued fraction
    # E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))),
    # stable and fast for x > 1.
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _E1_MAX_ITER):
        a = -float(i) * float(i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h * math.exp(-x)
    raise ArithmeticError(f"E1 continued fraction failed to converge at x={x}")


def exp_integral_e1(x: float) -> float:
    """Exponential integral E1(x) = integral_x^inf exp(-u)/u du, x > 0.

    Uses the alternating power series for x <= 1 and a continued
    fraction for x > 1 (Abramowitz & Stegun 5.1.11 / 5.1.22). Relative
    error <= 1e-10 across the positive axis.

    Parameters
    ----------
    x : float
        Argument, strictly positive.

    Returns
    -------
    float
        E1(x), positive and strictly decreasing in x.
    """
    x = _require_finite(x, "x")
    if x <= 0.0:
        raise ValueError(f"exp_integral_e1 requires x > 0, got {x}")
    if x <= 1.0:
        return _e1_series(x)
    # Underflows to 0 for x beyond ~700; that is the correct double.
    return _e1_continued_fraction(x)
