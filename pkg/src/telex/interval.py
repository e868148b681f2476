"""Exit law of the symmetric telegraph process on an interval [a, b].

Closed forms for the probability of leaving through the upper endpoint b
and for the mean exit time, conditioned on the starting direction.  The
underlying two-point boundary problems are

    u0' = u1' = -(lam/c)(u1 - u0),          u0(b) = 1, u1(a) = 0,
    h0' = -(lam/c)(h1 - h0) - 1/c,          h0(b) = 0,
    h1' = -(lam/c)(h1 - h0) + 1/c,          h1(a) = 0,

whose solutions are linear (u) and quadratic (h) in x.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linops import Vec2
from .model import Interval, TelegraphParams, validate_interval_start


@dataclass(frozen=True)
class ExitProbTriple:
    """Exit probabilities conditioned on the initial direction.

    u0: starting rightward, u1: starting leftward, u: equiprobable start.
    The unconditional value is always the exact average of the other two.
    """

    u0: float
    u1: float
    u: float

    @classmethod
    def from_conditionals(cls, u0, u1):
        return cls(u0, u1, 0.5 * (u0 + u1))


@dataclass(frozen=True)
class MeanExitTriple:
    """Mean exit times conditioned on the initial direction."""

    h0: float
    h1: float
    h: float

    @classmethod
    def from_conditionals(cls, h0, h1):
        return cls(h0, h1, 0.5 * (h0 + h1))


def _u_pair(params, interval, x):
    # closed form is a global linear function; no domain check here so that
    # finite-difference stencils may straddle the endpoints
    c, lam = params.c, params.lam
    den = c + lam * interval.width
    u0 = (c + lam * (x - interval.a)) / den
    u1 = lam * (x - interval.a) / den
    return u0, u1


def _h_pair(params, interval, x):
    c, lam = params.c, params.lam
    parabola = (lam / (c * c)) * (interval.b - x) * (x - interval.a)
    h0 = parabola + (interval.b - x) / c
    h1 = parabola + (x - interval.a) / c
    return h0, h1


def exit_prob_upper(params: TelegraphParams, interval: Interval, x: float) -> ExitProbTriple:
    """Probability of exiting through b from x in [a, b].

    u0(x) = (c + lam (x-a)) / (c + lam (b-a)), u1(x) = lam (x-a) / (same).
    With lam = 0 the motion is ballistic: u0 = 1, u1 = 0 everywhere.
    """
    validate_interval_start(interval, x)
    u0, u1 = _u_pair(params, interval, x)
    return ExitProbTriple.from_conditionals(u0, u1)


def exit_prob_lower(params: TelegraphParams, interval: Interval, x: float) -> ExitProbTriple:
    """Probability of exiting through a; complements exit_prob_upper.

    Field roles are kept: u0 is still the rightward-start probability.
    """
    upper = exit_prob_upper(params, interval, x)
    return ExitProbTriple.from_conditionals(1.0 - upper.u0, 1.0 - upper.u1)


def mean_exit_time(params: TelegraphParams, interval: Interval, x: float) -> MeanExitTriple:
    """Mean time to leave [a, b] from x.

    Shared parabolic part (lam/c^2)(b-x)(x-a) plus a direction-dependent
    ballistic term (b-x)/c resp. (x-a)/c.
    """
    validate_interval_start(interval, x)
    h0, h1 = _h_pair(params, interval, x)
    return MeanExitTriple.from_conditionals(h0, h1)


def residual_u_system(params: TelegraphParams, interval: Interval, x: float,
                      h_step: float = 1e-5) -> Vec2:
    """Central-difference residual of the first-order u system at x.

    Both components should vanish to O(h_step^2); the contract is
    |residual| <= 1e-6 (1 + lam/c) at the default step.
    """
    validate_interval_start(interval, x)
    c, lam = params.c, params.lam
    u0p, u1p = _u_pair(params, interval, x + h_step)
    u0m, u1m = _u_pair(params, interval, x - h_step)
    u0, u1 = _u_pair(params, interval, x)
    du0 = (u0p - u0m) / (2.0 * h_step)
    du1 = (u1p - u1m) / (2.0 * h_step)
    rhs = -(lam / c) * (u1 - u0)
    return Vec2(du0 - rhs, du1 - rhs)


def residual_h_system(params: TelegraphParams, interval: Interval, x: float,
                      h_step: float = 1e-5) -> Vec2:
    """Central-difference residual of the first-order h system at x."""
    validate_interval_start(interval, x)
    c, lam = params.c, params.lam
    h0p, h1p = _h_pair(params, interval, x + h_step)
    h0m, h1m = _h_pair(params, interval, x - h_step)
    h0, h1 = _h_pair(params, interval, x)
    dh0 = (h0p - h0m) / (2.0 * h_step)
    dh1 = (h1p - h1m) / (2.0 * h_step)
    coupling = -(lam / c) * (h1 - h0)
    return Vec2(dh0 - (coupling - 1.0 / c), dh1 - (coupling + 1.0 / c))


def residual_h_ode(params: TelegraphParams, interval: Interval, x: float,
                   h_step: float | None = None) -> float:
    """Residual h'' + 2 lam / c^2 of the unconditional mean exit time.

    h is an exact parabola in x, so the central second difference is exact
    for any step; a wide default step keeps rounding noise near 1e-14.
    """
    validate_interval_start(interval, x)
    if h_step is None:
        h_step = interval.width / 8.0

    def h_at(t):
        pair = _h_pair(params, interval, t)
        return 0.5 * (pair[0] + pair[1])

    second = (h_at(x + h_step) - 2.0 * h_at(x) + h_at(x - h_step)) / (h_step * h_step)
    return second + 2.0 * params.lam / (params.c * params.c)
