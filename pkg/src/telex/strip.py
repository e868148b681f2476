"""Exit law of planar orthogonal-direction motion in the strip 0 <= y <= L.

The particle moves at speed c along one of the four axis directions and
turns +-90 degrees with probability 1/2 at Poisson(lam) epochs.  Exit
happens through y = 0 or y = L; the exit abscissa for a bottom exit has
density u_j(x, y; z) depending on the starting direction j.

In Fourier variables (transform over the starting abscissa x) the system
closes over the two vertical directions, giving hyperbolic closed forms
u~_1, u~_3 and algebraic expressions for the horizontal ones.  Inverting
leads to integrals over w in [0, 1) with endpoint-singular oscillatory
integrands; those run through the truncated w = sin(theta) scheme in
the quadrature module.

All hyperbolic expressions are kept in factored form with non-positive
exponents, e.g.

    (s+|a|c)^2 e^{bL} - (s-|a|c)^2 e^{-bL}
        = e^{bL} [ 4 s |a| c + (s-|a|c)^2 (1 - e^{-2bL}) ],

which is overflow-safe and free of subtractive cancellation (both terms
are non-negative).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain, QuadratureFailure
from .model import PlanarStripProblem, validate_strip_start
from .quadrature import DEFAULT_BUDGET, _integrate_w_pair_vec

log = logging.getLogger(__name__)

DENSITY_TOL = 1e-6


@dataclass(frozen=True)
class StripExitProbs:
    """Bottom-exit probabilities by starting direction plus unconditional p.

    p0 and p2 (horizontal starts) coincide and equal the average of the
    vertical ones; p is the average over all four directions.
    """

    p0: float
    p1: float
    p2: float
    p3: float
    p: float

    @classmethod
    def from_vertical(cls, p1, p3):
        p0 = 0.5 * (p1 + p3)
        return cls(p0, p1, p0, p3, (p0 + p1 + p0 + p3) / 4.0)


@dataclass(frozen=True)
class StripMeanTimes:
    """Mean exit times by starting direction plus the unconditional h.

    Horizontal starts pay an extra 1/lam over the vertical average: the
    first turn is needed before any vertical progress.
    """

    h0: float
    h1: float
    h2: float
    h3: float
    h: float

    @classmethod
    def from_vertical(cls, h1, h3, lam):
        h0 = 0.5 * (h1 + h3) + 1.0 / lam
        return cls(h0, h1, h0, h3, (h0 + h1 + h0 + h3) / 4.0)


# ---------------------------------------------------------------------------
# closed forms of Theorems 6 and 7


def exit_prob_lower_strip(problem: PlanarStripProblem, y: float) -> StripExitProbs:
    """P(exit through y = 0) for each starting direction.

    p1 = lam (L-y) / (lam L + 2c), p3 = (2c + lam (L-y)) / (lam L + 2c);
    horizontal starts average the two.
    """
    validate_strip_start(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    den = lam * L + 2.0 * c
    p1 = lam * (L - y) / den
    p3 = (2.0 * c + lam * (L - y)) / den
    return StripExitProbs.from_vertical(p1, p3)


def mean_exit_time_strip(problem: PlanarStripProblem, y: float) -> StripMeanTimes:
    """Mean exit time for each starting direction.

    Shared parabola lam y (L-y) / c^2 plus ballistic terms 2(L-y)/c and
    2y/c for the vertical starts.
    """
    validate_strip_start(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    parabola = lam * y * (L - y) / (c * c)
    h1 = parabola + 2.0 * (L - y) / c
    h3 = parabola + 2.0 * y / c
    return StripMeanTimes.from_vertical(h1, h3, lam)


def singular_mass(problem: PlanarStripProblem, y: float) -> float:
    """Weight e^{-lam y / c} of the atom at z = x for a downward start.

    A particle started downward exits at its own abscissa exactly when no
    turn happens during the fall of length y.
    """
    validate_strip_start(problem, y)
    return math.exp(-problem.lam * y / problem.c)


# ---------------------------------------------------------------------------
# Fourier transforms over the starting abscissa


def _beta_parts(problem, alpha):
    c, lam = problem.c, problem.lam
    s = math.hypot(lam, alpha * c)
    ac = abs(alpha) * c
    beta = abs(alpha) * lam / s
    return s, ac, beta


def fourier_u1(problem: PlanarStripProblem, alpha: float, y: float, z: float) -> complex:
    """Fourier transform of the bottom-exit density for an upward start."""
    validate_strip_start(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    if alpha == 0.0:
        return complex(lam * (L - y) / (lam * L + 2.0 * c), 0.0)
    s, ac, beta = _beta_parts(problem, alpha)
    num = lam * lam * math.exp(-beta * y) * (-math.expm1(-2.0 * beta * (L - y)))
    den = 4.0 * s * ac + (s - ac) ** 2 * (-math.expm1(-2.0 * beta * L))
    mag = num / den
    return complex(mag * math.cos(alpha * z), mag * math.sin(alpha * z))


def fourier_u3(problem: PlanarStripProblem, alpha: float, y: float, z: float) -> complex:
    """Fourier transform for a downward start (atom included)."""
    validate_strip_start(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    if alpha == 0.0:
        return complex((2.0 * c + lam * (L - y)) / (lam * L + 2.0 * c), 0.0)
    s, ac, beta = _beta_parts(problem, alpha)
    smac2 = (s - ac) ** 2
    num = 4.0 * s * ac + smac2 * (-math.expm1(-2.0 * beta * (L - y)))
    den = 4.0 * s * ac + smac2 * (-math.expm1(-2.0 * beta * L))
    mag = math.exp(-beta * y) * num / den
    return complex(mag * math.cos(alpha * z), mag * math.sin(alpha * z))


def fourier_u0(problem: PlanarStripProblem, alpha: float, y: float, z: float) -> complex:
    """Fourier transform for a rightward start: lam (u~1 + u~3) / (2(lam + i c alpha))."""
    lam = problem.lam
    total = fourier_u1(problem, alpha, y, z) + fourier_u3(problem, alpha, y, z)
    return lam * total / (2.0 * complex(lam, problem.c * alpha))


def fourier_u2(problem: PlanarStripProblem, alpha: float, y: float, z: float) -> complex:
    """Fourier transform for a leftward start: conjugate coefficient of u~0."""
    lam = problem.lam
    total = fourier_u1(problem, alpha, y, z) + fourier_u3(problem, alpha, y, z)
    return lam * total / (2.0 * complex(lam, -problem.c * alpha))


def residual_fourier_system(problem: PlanarStripProblem, alpha: float, y: float,
                            h_step: float | None = None):
    """Central-difference residual in y of the Fourier two-point system.

    Returns (residual_u1, residual_u3) as complex numbers; both should be
    O(h_step^2) small against the coefficient scale lam/c.
    """
    validate_strip_start(problem, y)
    if h_step is None:
        h_step = 1e-6 * problem.L
    c, lam = problem.c, problem.lam
    s2 = lam * lam + (c * alpha) ** 2
    diag = (lam ** 3 + 2.0 * lam * (c * alpha) ** 2) / (2.0 * c * s2)
    off = lam ** 3 / (2.0 * c * s2)

    def pair(t):
        return (_fourier_u1_raw(problem, alpha, t), _fourier_u3_raw(problem, alpha, t))

    u1p, u3p = pair(y + h_step)
    u1m, u3m = pair(y - h_step)
    u1, u3 = pair(y)
    du1 = (u1p - u1m) / (2.0 * h_step)
    du3 = (u3p - u3m) / (2.0 * h_step)
    res1 = du1 - (diag * u1 - off * u3)
    res3 = du3 - (off * u1 - diag * u3)
    return res1, res3


def _fourier_u1_raw(problem, alpha, y):
    # z = 0 and no domain check; the residual stencil may cross y = 0 or L
    c, lam, L = problem.c, problem.lam, problem.L
    if alpha == 0.0:
        return complex(lam * (L - y) / (lam * L + 2.0 * c), 0.0)
    s, ac, beta = _beta_parts(problem, alpha)
    num = lam * lam * math.exp(-beta * y) * (-math.expm1(-2.0 * beta * (L - y)))
    den = 4.0 * s * ac + (s - ac) ** 2 * (-math.expm1(-2.0 * beta * L))
    return complex(num / den, 0.0)


def _fourier_u3_raw(problem, alpha, y):
    c, lam, L = problem.c, problem.lam, problem.L
    if alpha == 0.0:
        return complex((2.0 * c + lam * (L - y)) / (lam * L + 2.0 * c), 0.0)
    s, ac, beta = _beta_parts(problem, alpha)
    smac2 = (s - ac) ** 2
    num = 4.0 * s * ac + smac2 * (-math.expm1(-2.0 * beta * (L - y)))
    den = 4.0 * s * ac + smac2 * (-math.expm1(-2.0 * beta * L))
    return complex(math.exp(-beta * y) * num / den, 0.0)


def residual_poisson_pde(problem: PlanarStripProblem, y: float,
                         component: int | None = None) -> float:
    """Residual h'' + 2 lam / c^2 of the mean exit time in y.

    Every component of Theorem 7 shares the same quadratic y-term, so the
    central second difference (width L/8) is exact up to rounding for any
    of them; component None selects the unconditional h.
    """
    validate_strip_start(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    step = L / 8.0

    def h_at(t):
        parabola = lam * t * (L - t) / (c * c)
        h1 = parabola + 2.0 * (L - t) / c
        h3 = parabola + 2.0 * t / c
        h0 = 0.5 * (h1 + h3) + 1.0 / lam
        if component is None:
            return (h0 + h1 + h0 + h3) / 4.0
        return (h0, h1, h0, h3)[component]

    second = (h_at(y + step) - 2.0 * h_at(y) + h_at(y - step)) / (step * step)
    return second + 2.0 * lam / (c * c)


# ---------------------------------------------------------------------------
# density inversions: integrals over w in [0, 1)


def _validate_interior(problem, y):
    if not 0.0 < y < problem.L:
        raise OutOfDomain(f"density needs 0 < y < L, got y={y}")


def _finish(result, tol, what):
    if not result.converged:
        raise QuadratureFailure(
            f"{what}: tolerance {tol} not reached within budget "
            f"(evals={result.evals}, err~{result.err_estimate:.2e})"
        )
    value = result.value
    if value < 0.0:
        clamp_tol = 10.0 * max(tol, result.err_estimate)
        if value < -clamp_tol:
            raise QuadratureFailure(
                f"{what}: negative density {value:.3e} beyond clamp window"
            )
        log.debug("%s: clamped negative density %.3e to 0", what, value)
        value = 0.0
    return value


def density_u1(problem: PlanarStripProblem, x: float, y: float, z: float,
               tol: float = DENSITY_TOL, budget: int = DEFAULT_BUDGET) -> float:
    """Bottom-exit abscissa density u_1(x, y; z) for an upward start."""
    _validate_interior(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    zeta = z - x
    kap = lam * y / c            # b - a
    two_a = 2.0 * lam * (L - y) / c
    two_b = 2.0 * lam * L / c
    freq = zeta * lam / c
    pref = 2.0 * lam / (c * math.pi)

    def integrand(w, eps):
        s2 = eps * (1.0 + w)
        phase = freq * w / np.sqrt(s2)
        num = np.exp(-kap * w) * (-np.expm1(-two_a * w)) * 0.5
        den = 4.0 * w + eps * eps * (-np.expm1(-two_b * w))
        return pref * np.cos(phase) * num / den

    result = _integrate_w_pair_vec(integrand, tol, budget)
    return _finish(result, tol, f"density_u1(z={z})")


def density_u3_continuous(problem: PlanarStripProblem, x: float, y: float, z: float,
                          tol: float = DENSITY_TOL, budget: int = DEFAULT_BUDGET) -> float:
    """Continuous part u_3^*(x, y; z) of the downward-start exit density.

    The atom e^{-lam y/c} delta(z - x) is excluded and the remainder is
    normalised by 1 - e^{-lam y/c}, so u_3^* integrates to the bottom-exit
    probability conditional on at least one turn.
    """
    _validate_interior(problem, y)
    c, lam, L = problem.c, problem.lam, problem.L
    zeta = z - x
    kap = lam * y / c
    two_b = 2.0 * lam * L / c
    two_a = two_b - 2.0 * kap
    freq = zeta * lam / c
    pref = lam / (c * math.pi * (-math.expm1(-kap)))
    mass = math.exp(-kap)

    def integrand(w, eps):
        s2 = eps * (1.0 + w)
        phase = freq * w / np.sqrt(s2)
        q = eps * eps
        den = 4.0 * w + q * (-np.expm1(-two_b * w))
        # ratio form is exact for small w; near w = 1 it hits cancellation
        # in ratio - mass, where the expm1 form below stays fully accurate
        ratio_num = 4.0 * w + q * (-np.expm1(-two_a * w))
        ratio_bracket = np.exp(-kap * w) * ratio_num / den - mass
        p = (1.0 + w) ** 2
        inner = (p * np.expm1(kap * eps)
                 - q * (np.exp(kap * (1.0 + w) - two_b * w) - np.exp(-two_b * w)))
        endpoint_bracket = mass * inner / den
        bracket = np.where(w <= 0.5, ratio_bracket, endpoint_bracket)
        return pref * np.cos(phase) * bracket / s2

    result = _integrate_w_pair_vec(integrand, tol, budget)
    return _finish(result, tol, f"density_u3_continuous(z={z})")


def _density_horizontal(problem, x, y, z, sign, tol, budget, what):
    c, lam, L = problem.c, problem.lam, problem.L
    zeta = z - x
    kap = lam * y / c
    two_a = 2.0 * lam * (L - y) / c
    two_b = 2.0 * lam * L / c
    freq = zeta * lam / c
    pref = lam / (c * math.pi)

    def integrand(w, eps):
        s2 = eps * (1.0 + w)
        root = np.sqrt(s2)
        phase = freq * w / root
        num = 2.0 * w + eps * (-np.expm1(-two_a * w))
        den = 4.0 * w + eps * eps * (-np.expm1(-two_b * w))
        bracket = np.exp(-kap * w) * num / den
        return pref * bracket * (np.cos(phase) + sign * w * np.sin(phase) / root)

    result = _integrate_w_pair_vec(integrand, tol, budget)
    return _finish(result, tol, what)


def density_u0(problem: PlanarStripProblem, x: float, y: float, z: float,
               tol: float = DENSITY_TOL, budget: int = DEFAULT_BUDGET) -> float:
    """Bottom-exit abscissa density for a rightward start.

    Carries a jump at z = x; at the jump the inversion returns the mean
    of the one-sided limits.  Note that z barely beyond x on either side
    may need many tail refinements at tight tolerances.
    """
    _validate_interior(problem, y)
    return _density_horizontal(problem, x, y, z, +1.0, tol, budget,
                               f"density_u0(z={z})")


def density_u2(problem: PlanarStripProblem, x: float, y: float, z: float,
               tol: float = DENSITY_TOL, budget: int = DEFAULT_BUDGET) -> float:
    """Bottom-exit abscissa density for a leftward start; mirror of u0."""
    _validate_interior(problem, y)
    return _density_horizontal(problem, x, y, z, -1.0, tol, budget,
                               f"density_u2(z={z})")


def pj_by_density_integration(problem: PlanarStripProblem, x: float, y: float,
                              j: int, n: int = 2001, tol: float = 2e-6,
                              budget: int = DEFAULT_BUDGET) -> float:
    """Recover the bottom-exit probability p_j by integrating its density.

    Trapezoid over the window |z - x| <= W with W = 50 max(c/lam, c h(y)),
    using at least 2001 nodes so the jump of the horizontal densities sits
    exactly on a node.  For j = 3 the atom mass is added back.
    """
    _validate_interior(problem, y)
    if j not in (0, 1, 2, 3):
        raise ValueError(f"direction index must be 0..3, got {j}")
    if n < 2001:
        n = 2001
    c, lam = problem.c, problem.lam
    h_here = mean_exit_time_strip(problem, y).h
    W = 50.0 * max(c / lam, c * h_here)
    density = {
        0: density_u0,
        1: density_u1,
        2: density_u2,
        3: density_u3_continuous,
    }[j]

    step = 2.0 * W / (n - 1)
    total = 0.0
    for i in range(n):
        zi = x - W + i * step
        value = density(problem, x, y, zi, tol, budget)
        weight = 0.5 if i in (0, n - 1) else 1.0
        total += weight * value
    integral = total * step
    if j == 3:
        mass = singular_mass(problem, y)
        return mass + (1.0 - mass) * integral
    return integral
