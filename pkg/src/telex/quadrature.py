"""Deterministic quadrature used by the strip density inversions.

Three schemes: an adaptive bisection rule built on the Gauss 7 /
Kronrod 15 pair, a plain composite trapezoid, and a specialised driver
for integrals over [0, 1) whose integrands oscillate with diverging
frequency and carry (1-w^2)^{-1/2} or (1-w^2)^{-3/2} endpoint factors.

The panel error estimate is the plain |K15 - G7| difference.  That is
deliberately conservative: the oscillatory inversions can fool
variation-scaled error models into reporting convergence on panels that
span many whole periods, while |K15 - G7| stays honest until the panel
actually resolves the oscillation.

Everything here is branch-deterministic: same inputs, same bits.  The
vectorised wave driver refines a deterministic set of panels per pass,
so its output does not depend on thread count or call history.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergentTail

DEFAULT_BUDGET = 1_000_000

# initial endpoint clearance for the truncated oscillatory scheme
_DELTA0 = 1e-2 * (math.pi / 2.0)
_MAX_HALVINGS = 20

# Kronrod 15 abscissae (positive half) and weights; Gauss 7 weights nest
# on the odd-index nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

# full 15-node layout, ordered left to right, for the vectorised panels
_NODES15 = np.array([-_XGK[i] for i in range(7)] + [0.0] + [_XGK[6 - i] for i in range(7)])
_WK15 = np.array([_WGK[i] for i in range(7)] + [_WGK[7]] + [_WGK[6 - i] for i in range(7)])
_WG15 = np.zeros(15)
for _i in range(7):
    if _i % 2 == 1:
        _WG15[_i] = _WG[_i // 2]
        _WG15[14 - _i] = _WG[_i // 2]
_WG15[7] = _WG[3]


@dataclass(frozen=True)
class QuadResult:
    """Quadrature output: estimate, error bound, evaluation count.

    converged is False when the budget ran out before the tolerance was
    met; the value is still the best available estimate.
    """

    value: float
    err_estimate: float
    evals: int
    converged: bool = True


def _gk15(f, a, b):
    """One Gauss7/Kronrod15 panel on [a, b]: (kronrod, error, evals)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    resg = _WG[3] * fc
    resk = _WGK[7] * fc
    for i in range(7):
        dx = half * _XGK[i]
        f1 = f(center - dx)
        f2 = f(center + dx)
        resk += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            resg += _WG[i // 2] * (f1 + f2)
    err = abs(resk - resg) * half
    return resk * half, err, 15


def integrate_adaptive(f: Callable[[float], float], a: float, b: float,
                       tol: float, budget: int = DEFAULT_BUDGET) -> QuadResult:
    """Adaptive bisection with the embedded G7/K15 pair.

    Splits the interval with the largest error estimate until the summed
    estimate drops below tol or the evaluation budget is exhausted; in
    the latter case the best estimate is returned with converged=False.
    """
    if a == b:
        return QuadResult(0.0, 0.0, 0, True)
    value, err, evals = _gk15(f, a, b)
    # heap of (-err, insertion counter, a, b, value, err)
    heap = [(-err, 0, a, b, value, err)]
    counter = 1
    total_value = value
    total_err = err
    while total_err > tol and heap:
        if evals + 30 > budget:
            return QuadResult(total_value, total_err, evals, False)
        neg, _, lo, hi, val, er = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # interval at float resolution; nothing more to gain
            break
        v1, e1, n1 = _gk15(f, lo, mid)
        v2, e2, n2 = _gk15(f, mid, hi)
        evals += n1 + n2
        total_value += v1 + v2 - val
        total_err += e1 + e2 - er
        heapq.heappush(heap, (-e1, counter, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, counter + 1, mid, hi, v2, e2))
        counter += 2
    return QuadResult(total_value, max(total_err, 0.0), evals, True)


def integrate_trapezoid(f: Callable[[float], float], a: float, b: float, n: int) -> float:
    """Composite trapezoid rule on n >= 2 equally spaced nodes."""
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    step = (b - a) / (n - 1)
    total = 0.5 * (f(a) + f(b))
    for i in range(1, n - 1):
        total += f(a + i * step)
    return total * step


# ---------------------------------------------------------------------------
# vectorised wave-refinement driver


def _gk15_wave(fvec, los, his):
    """Panel sums for a batch of intervals; fvec maps an array to an array."""
    centers = 0.5 * (los + his)
    halves = 0.5 * (his - los)
    nodes = centers[:, None] + halves[:, None] * _NODES15[None, :]
    values = fvec(nodes.ravel()).reshape(nodes.shape)
    resk = values @ _WK15
    resg = values @ _WG15
    vals = resk * halves
    errs = np.abs(resk - resg) * halves
    return vals, errs


def _adaptive_vec(fvec, a, b, tol, budget):
    """Wave-parallel version of integrate_adaptive.

    Each pass bisects every panel whose error exceeds its proportional
    share tol * len/(b - a); termination and node placement are fully
    deterministic.
    """
    los = np.array([a])
    his = np.array([b])
    vals, errs = _gk15_wave(fvec, los, his)
    evals = 15
    span = b - a
    while True:
        total_err = float(errs.sum())
        total_val = float(vals.sum())
        if total_err <= tol:
            return QuadResult(total_val, total_err, evals, True)
        widths = his - los
        mids = 0.5 * (los + his)
        mask = (errs > tol * widths / span) & (mids > los) & (mids < his)
        count = int(mask.sum())
        if count == 0 or evals + 30 * count > budget:
            converged = count == 0
            return QuadResult(total_val, total_err, evals, converged)
        new_los = np.concatenate([los[mask], mids[mask]])
        new_his = np.concatenate([mids[mask], his[mask]])
        new_vals, new_errs = _gk15_wave(fvec, new_los, new_his)
        evals += 15 * 2 * count
        los = np.concatenate([los[~mask], new_los])
        his = np.concatenate([his[~mask], new_his])
        vals = np.concatenate([vals[~mask], new_vals])
        errs = np.concatenate([errs[~mask], new_errs])


def _theta_eval(gpair, thetas):
    # 1 - sin(theta) = 2 sin^2(pi/4 - theta/2): exact near the endpoint,
    # where sin(theta) itself would round to 1.0
    half_gap = 0.25 * math.pi - 0.5 * thetas
    one_minus_w = 2.0 * np.sin(half_gap) ** 2
    return gpair(np.sin(thetas), one_minus_w)


def _w_pair_core(gpair, tol, budget, adaptive, to_theta):
    upper = 0.5 * math.pi
    cut = upper - _DELTA0
    main = adaptive(to_theta(gpair), 0.0, cut, 0.25 * tol, budget)
    value = main.value
    err = main.err_estimate
    evals = main.evals
    if not main.converged:
        return QuadResult(value, err, evals, False)
    delta = _DELTA0
    for _ in range(_MAX_HALVINGS):
        delta *= 0.5
        new_cut = upper - delta
        strip = adaptive(to_theta(gpair), cut, new_cut, 0.25 * tol,
                         max(budget - evals, 0))
        cut = new_cut
        value += strip.value
        err += strip.err_estimate
        evals += strip.evals
        if not strip.converged:
            return QuadResult(value, err + abs(strip.value), evals, False)
        if abs(strip.value) < tol:
            return QuadResult(value, err + abs(strip.value), evals, True)
    raise NonConvergentTail(
        f"tail did not stabilise below {tol} after {_MAX_HALVINGS} halvings"
    )


def _integrate_w_pair(g, tol, budget=DEFAULT_BUDGET) -> QuadResult:
    """Scalar driver for endpoint-singular oscillatory integrands on [0, 1).

    g(w, one_minus_w) must absorb one factor of sqrt(1-w^2) (the
    Jacobian of w = sin theta); the second argument carries 1-w to full
    relative precision so deep-tail evaluations stay finite.

    The integral over theta in [0, pi/2 - delta] is extended strip by
    strip with delta halving; the loop stops once a strip contributes
    less than tol.  More than 20 halvings raises NonConvergentTail.
    """

    def to_theta(gpair):
        def f_theta(theta):
            half_gap = 0.25 * math.pi - 0.5 * theta
            one_minus_w = 2.0 * math.sin(half_gap) ** 2
            return gpair(math.sin(theta), one_minus_w)
        return f_theta

    return _w_pair_core(g, tol, budget, integrate_adaptive, to_theta)


def _integrate_w_pair_vec(gvec, tol, budget=DEFAULT_BUDGET) -> QuadResult:
    """Vectorised twin of _integrate_w_pair; gvec maps arrays to arrays."""

    def to_theta(gpair):
        return lambda thetas: _theta_eval(gpair, thetas)

    return _w_pair_core(gvec, tol, budget, _adaptive_vec, to_theta)


def integrate_w_singular_oscillatory(g: Callable[[float], float], tol: float,
                                     budget: int = DEFAULT_BUDGET) -> QuadResult:
    """Integrate g over [0, 1) with endpoint singularity damping.

    g is sampled as g(w) after the substitution w = sin theta; the
    Jacobian cos theta is applied here, which bounds integrands carrying
    a (1-w^2)^{-1/2} factor.
    """

    def paired(w, one_minus_w):
        s2 = one_minus_w * (1.0 + w)
        return g(w) * math.sqrt(s2)

    return _integrate_w_pair(paired, tol, budget)
