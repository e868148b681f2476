"""Brownian-motion reference values for the hydrodynamic limits.

Unit diffusion coefficient throughout; these are the limiting exit laws
of the telegraph motions under the scaling lam = c^2, c -> infinity.
"""
from __future__ import annotations

import math

from .model import Interval, PlanarStripProblem, validate_interval_start, validate_strip_start

# below |mu| the exit probability is evaluated as the driftless line
_PROB_LINEAR_CUTOFF = 1e-10

# below |mu| (b-a) the mean exit time switches to its series in mu
_TIME_SERIES_CUTOFF = 1e-6


def bm_exit_prob_upper(interval: Interval, x: float) -> float:
    """P(exit through b) = (x - a)/(b - a) for driftless Brownian motion."""
    validate_interval_start(interval, x)
    return (x - interval.a) / interval.width


def bm_mean_exit_time(interval: Interval, x: float) -> float:
    """E[exit time] = (b - x)(x - a) for driftless Brownian motion."""
    validate_interval_start(interval, x)
    return (interval.b - x) * (x - interval.a)


def bm_drift_exit_prob_upper(interval: Interval, x: float, mu: float) -> float:
    """P(exit through b) for Brownian motion with drift mu.

    (e^{-2 mu x} - e^{-2 mu a}) / (e^{-2 mu b} - e^{-2 mu a}), written with
    expm1 and non-positive exponents so large |mu| (b-a) cannot overflow.
    """
    validate_interval_start(interval, x)
    a, b = interval.a, interval.b
    if abs(mu) < _PROB_LINEAR_CUTOFF:
        return (x - a) / interval.width
    if mu > 0:
        return math.expm1(-2.0 * mu * (x - a)) / math.expm1(-2.0 * mu * (b - a))
    num = math.expm1(2.0 * mu * (b - x)) - math.expm1(2.0 * mu * (b - a))
    return num / -math.expm1(2.0 * mu * (b - a))


def bm_drift_mean_exit_time(interval: Interval, x: float, mu: float) -> float:
    """E[exit time] for Brownian motion with drift mu.

    ((b-a) P_b(x) - (x-a)) / mu away from mu = 0; for |mu| (b-a) < 1e-6
    the first-order series in mu is used to dodge the 0/0 cancellation:

        (b-x)(x-a) + mu (x-a) [ (b-a)^2/3 - (x-a)(b-a) + 2 (x-a)^2/3 ].
    """
    validate_interval_start(interval, x)
    a, b = interval.a, interval.b
    d = interval.width
    t = x - a
    if abs(mu) * d < _TIME_SERIES_CUTOFF:
        return (b - x) * t + mu * t * (d * d / 3.0 - t * d + 2.0 * t * t / 3.0)
    return (d * bm_drift_exit_prob_upper(interval, x, mu) - t) / mu


def bm_strip_refs(problem: PlanarStripProblem, y: float):
    """Brownian references for the strip: (P(exit bottom), mean exit time)."""
    validate_strip_start(problem, y)
    L = problem.L
    return (L - y) / L, y * (L - y)
