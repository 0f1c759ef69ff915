"""Tail probabilities for the Student-t and F distributions.

Both tails reduce to the regularized incomplete beta function, evaluated
here with the classic continued-fraction scheme (modified Lentz method)
so the package carries no statistics dependency.  Accuracy is ~1e-13 over
the ranges regression diagnostics need, comfortably inside the 5e-4
agreement required against published tables.
"""

from __future__ import annotations

import math

from .errors import InvalidArgumentError

__all__ = ["betainc_regularized", "student_t_sf", "f_sf"]

_MAX_ITER = 300
_EPS = 1e-15
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function at (a, b, x)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0."""
    if a <= 0 or b <= 0:
        raise InvalidArgumentError(f"beta parameters must be positive, got a={a}, b={b}")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    # Evaluate on whichever side the continued fraction converges fastest.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: int) -> float:
    """Upper-tail probability P(T > t) for Student-t with ``df`` degrees.

    A two-sided p-value is ``2 * student_t_sf(abs(t), df)``.
    """
    if df < 1:
        raise InvalidArgumentError(f"degrees of freedom must be >= 1, got {df}")
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * betainc_regularized(df / 2.0, 0.5, x)
    return tail if t > 0 else 1.0 - tail


def f_sf(f: float, df1: int, df2: int) -> float:
    """Upper-tail probability P(F > f) for the F(df1, df2) distribution."""
    if df1 < 1 or df2 < 1:
        raise InvalidArgumentError(
            f"degrees of freedom must be >= 1, got df1={df1}, df2={df2}"
        )
    if math.isnan(f):
        return math.nan
    if f < 0:
        raise InvalidArgumentError(f"F statistic must be non-negative, got {f}")
    if math.isinf(f):
        return 0.0
    if f == 0.0:
        return 1.0
    x = df2 / (df2 + df1 * f)
    return betainc_regularized(df2 / 2.0, df1 / 2.0, x)
