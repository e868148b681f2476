"""Exit law of the drifted (asymmetric) telegraph process on [a, b].

Rightward legs run at speed c0 with reversal rate lam0, leftward legs at
c1 / lam1.  The coefficient matrix of the boundary-value systems is
A = [[lam0/c0, -lam0/c0], [lam1/c1, -lam1/c1]] with A^2 = r A, so every
solution is a combination of 1, x and e^{r x}, where

    r = lam0/c0 - lam1/c1.

Exponentials are kept in shifted form e^{r (t - s)} with the shift point
s chosen so that all arguments are <= 0; this keeps |r| (b-a) up to ~700
free of overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import brownian
from .errors import DegenerateAsymmetric, DegenerateSymmetric, InvalidScale
from .interval import ExitProbTriple, MeanExitTriple, _u_pair as _sym_u_pair
from .linops import Vec2
from .model import DriftTelegraphParams, Interval, TelegraphParams, validate_interval_start

# below this value of |r| (b-a) the exponential solutions are numerically
# indistinguishable from the symmetric ones
_DEGENERATE_SCALE = 1e-7

# parameter pairs closer than this (relative) count as genuinely symmetric
_SYMMETRY_TOL = 1e-6


@dataclass(frozen=True)
class DriftRate:
    """Effective drift rate r and the denominator lam0 c1 - lam1 c0.

    Both vanish together; r = denom / (c0 c1).
    """

    r: float
    denom: float

    @classmethod
    def from_params(cls, p: DriftTelegraphParams):
        return cls(p.lam0 / p.c0 - p.lam1 / p.c1, p.lam0 * p.c1 - p.lam1 * p.c0)


def _relative_asymmetry(p: DriftTelegraphParams) -> float:
    dc = abs(p.c0 - p.c1) / max(p.c0, p.c1)
    dl = abs(p.lam0 - p.lam1) / max(p.lam0, p.lam1)
    return max(dc, dl)


def _shifted_exp(r, interval):
    """Return F with F(t) = e^{r (t - s)}, s picked so arguments stay <= 0."""
    s = interval.b if r > 0 else interval.a

    def F(t):
        return math.exp(r * (t - s))

    return F


def _drift_u_pair(params, interval, x):
    # no domain check: finite-difference stencils may straddle endpoints
    rate = DriftRate.from_params(params)
    if abs(rate.r) * interval.width < _DEGENERATE_SCALE:
        if _relative_asymmetry(params) > _SYMMETRY_TOL:
            raise DegenerateAsymmetric(
                f"r (b-a) ~ 0 but parameters are asymmetric: {params}"
            )
        return _sym_u_pair(TelegraphParams(params.c0, params.lam0), interval, x)
    F = _shifted_exp(rate.r, interval)
    p01 = params.lam0 * params.c1
    p10 = params.lam1 * params.c0
    den = p01 * F(interval.b) - p10 * F(interval.a)
    u0 = (p01 * F(x) - p10 * F(interval.a)) / den
    u1 = p10 * (F(x) - F(interval.a)) / den
    return u0, u1


def _drift_h_pair(params, interval, x):
    rate = DriftRate.from_params(params)
    if abs(rate.denom) < _DEGENERATE_SCALE * params.lam0 * params.c1:
        raise DegenerateSymmetric(
            f"lam0 c1 ~ lam1 c0 for {params}; use the driftless formulas"
        )
    F = _shifted_exp(rate.r, interval)
    p01 = params.lam0 * params.c1
    p10 = params.lam1 * params.c0
    lam_sum = params.lam0 + params.lam1
    c_sum = params.c0 + params.c1
    width = interval.width
    den = p01 * F(interval.b) - p10 * F(interval.a)
    linear = lam_sum / rate.denom * (x - interval.a)
    h0 = (linear
          - lam_sum * width / rate.denom * (p01 * F(x) - p10 * F(interval.a)) / den
          + p01 * c_sum / rate.denom * (F(interval.b) - F(x)) / den)
    h1 = (linear
          - p10 * (c_sum + lam_sum * width) / rate.denom * (F(x) - F(interval.a)) / den)
    return h0, h1


def drift_exit_prob_upper(params: DriftTelegraphParams, interval: Interval,
                          x: float) -> ExitProbTriple:
    """Probability of exiting through b for the drifted process.

    When |r| (b-a) < 1e-7 the exponential formulas are degenerate.  If the
    parameters are symmetric to 1e-6 relative, the driftless closed form is
    evaluated with (lam0, c0); otherwise DegenerateAsymmetric is raised
    rather than guessing which regime the caller wants.
    """
    validate_interval_start(interval, x)
    u0, u1 = _drift_u_pair(params, interval, x)
    return ExitProbTriple.from_conditionals(u0, u1)


def drift_exit_prob_lower(params: DriftTelegraphParams, interval: Interval,
                          x: float) -> ExitProbTriple:
    """Probability of exiting through a, with field roles kept."""
    upper = drift_exit_prob_upper(params, interval, x)
    return ExitProbTriple.from_conditionals(1.0 - upper.u0, 1.0 - upper.u1)


def drift_mean_exit_time(params: DriftTelegraphParams, interval: Interval,
                         x: float) -> MeanExitTriple:
    """Mean exit time for the drifted process.

    Requires a genuinely asymmetric regime: |lam0 c1 - lam1 c0| must be
    at least 1e-7 lam0 c1, else DegenerateSymmetric is raised and the
    caller should use the driftless mean_exit_time instead.
    """
    validate_interval_start(interval, x)
    h0, h1 = _drift_h_pair(params, interval, x)
    return MeanExitTriple.from_conditionals(h0, h1)


def residual_drift_systems(params: DriftTelegraphParams, interval: Interval, x: float,
                           h_step: float = 1e-5):
    """Central-difference residuals of the drifted u and h systems at x.

    Returns (u_residual, h_residual) as Vec2 pairs; each component obeys
    the first-order equation with its own rate lamj/cj and forcing.
    """
    validate_interval_start(interval, x)
    k0 = params.lam0 / params.c0
    k1 = params.lam1 / params.c1

    u0p, u1p = _drift_u_pair(params, interval, x + h_step)
    u0m, u1m = _drift_u_pair(params, interval, x - h_step)
    u0, u1 = _drift_u_pair(params, interval, x)
    gap = u1 - u0
    res_u = Vec2((u0p - u0m) / (2 * h_step) + k0 * gap,
                 (u1p - u1m) / (2 * h_step) + k1 * gap)

    h0p, h1p = _drift_h_pair(params, interval, x + h_step)
    h0m, h1m = _drift_h_pair(params, interval, x - h_step)
    h0, h1 = _drift_h_pair(params, interval, x)
    hgap = h1 - h0
    res_h = Vec2((h0p - h0m) / (2 * h_step) + k0 * hgap + 1.0 / params.c0,
                 (h1p - h1m) / (2 * h_step) + k1 * hgap - 1.0 / params.c1)
    return res_u, res_h


def hydrodynamic_drift_limit_check(mu: float, scale: float, interval: Interval,
                                   x: float):
    """Evaluate the drifted exit probability under hydrodynamic scaling.

    Sets c0 = scale, c1 = c0 + 2 mu and lamj = cj^2, for which the exit
    probability converges to that of Brownian motion with drift mu as
    scale grows.  Returns (telegraph value, Brownian reference).
    """
    if not (scale >= 1.0 and math.isfinite(scale)):
        raise InvalidScale(f"scale must be >= 1, got {scale}")
    if not abs(mu) <= scale / 4.0:
        raise InvalidScale(f"need |mu| <= scale/4, got mu={mu} scale={scale}")
    c0 = scale
    c1 = c0 + 2.0 * mu
    params = DriftTelegraphParams(c0=c0, c1=c1, lam0=c0 * c0, lam1=c1 * c1)
    value = drift_exit_prob_upper(params, interval, x).u
    reference = brownian.bm_drift_exit_prob_upper(interval, x, mu)
    return value, reference
