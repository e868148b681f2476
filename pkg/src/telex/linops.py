"""Closed-form matrix exponentials for the 2x2 systems behind the exit laws.

Both boundary-value systems in this package have coefficient matrices of
the form A = [[p, -p], [q, -q]], for which A^2 = (p - q) A.  Two special
cases are handled: p = q (nilpotent, A^2 = 0) and the general rank-1
recurrence A^2 = trace(A) * A.  The exponentials then truncate to two
terms and no general-purpose expm is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotNilpotent, NotRank1Recurrent

# relative tolerance for deciding that A^2 vanishes / matches r*A
_STRUCTURE_TOL = 1e-12

# below this |r*x| the exponential ratios switch to series form
_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class Vec2:
    v0: float
    v1: float

    def __add__(self, other):
        return Vec2(self.v0 + other.v0, self.v1 + other.v1)

    def scaled(self, t):
        return Vec2(t * self.v0, t * self.v1)

    def max_abs(self):
        return max(abs(self.v0), abs(self.v1))


@dataclass(frozen=True)
class Mat2:
    m00: float
    m01: float
    m10: float
    m11: float

    @staticmethod
    def identity():
        return Mat2(1.0, 0.0, 0.0, 1.0)

    def __add__(self, other):
        return Mat2(self.m00 + other.m00, self.m01 + other.m01,
                    self.m10 + other.m10, self.m11 + other.m11)

    def __matmul__(self, other):
        return Mat2(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def scaled(self, t):
        return Mat2(t * self.m00, t * self.m01, t * self.m10, t * self.m11)

    def apply(self, v: Vec2) -> Vec2:
        return Vec2(self.m00 * v.v0 + self.m01 * v.v1,
                    self.m10 * v.v0 + self.m11 * v.v1)

    def trace(self):
        return self.m00 + self.m11

    def max_abs(self):
        return max(abs(self.m00), abs(self.m01), abs(self.m10), abs(self.m11))


def _square(a: Mat2) -> Mat2:
    return a @ a


def mat_exp_nilpotent(a: Mat2, x: float) -> Mat2:
    """e^{A x} = I + A x for nilpotent A (A^2 = 0).

    Raises NotNilpotent when entries of A^2 exceed 1e-12 relative to
    the squared magnitude of A.
    """
    scale = a.max_abs() ** 2
    if _square(a).max_abs() > _STRUCTURE_TOL * max(scale, 1.0):
        raise NotNilpotent(f"A^2 does not vanish for {a}")
    return Mat2.identity() + a.scaled(x)


def _phi(s):
    # (e^s - 1)/s, series for tiny s so r -> 0 reduces to the nilpotent case
    if abs(s) < _SERIES_CUTOFF:
        return 1.0 + s * (0.5 + s / 6.0)
    return math.expm1(s) / s


def _psi(s):
    # (e^s - 1 - s)/s^2, same limiting care
    if abs(s) < _SERIES_CUTOFF:
        return 0.5 + s * (1.0 / 6.0 + s / 24.0)
    return (math.expm1(s) - s) / (s * s)


def mat_exp_rank1_recurrent(a: Mat2, x: float) -> Mat2:
    """e^{A x} for A with A^2 = r A, r = trace(A).

    Powers collapse to A^k = r^{k-1} A, so the series sums to
    I + ((e^{r x} - 1)/r) A.  Near r x = 0 the ratio is evaluated by
    series to avoid cancellation.
    """
    r = a.trace()
    scale = max(a.max_abs() ** 2, 1.0)
    diff = _square(a) + a.scaled(-r)
    if diff.max_abs() > _STRUCTURE_TOL * scale:
        raise NotRank1Recurrent(f"A^2 != trace(A) A for {a}")
    return Mat2.identity() + a.scaled(x * _phi(r * x))


def solve_inhomogeneous(a: Mat2, g: Vec2, x0: float, k: Vec2, x: float) -> Vec2:
    """Solve dV/dx = A V + g with V(x0) = K at the point x.

    Uses variation of constants; with A^2 = r A both the propagator and
    the forcing integral have two-term closed forms:

        V(x) = e^{A t} K + (t I + psi(r t) t^2 A) g,   t = x - x0.
    """
    r = a.trace()
    scale = max(a.max_abs() ** 2, 1.0)
    diff = _square(a) + a.scaled(-r)
    if diff.max_abs() > _STRUCTURE_TOL * scale:
        raise NotRank1Recurrent(f"A^2 != trace(A) A for {a}")
    t = x - x0
    propagated = (Mat2.identity() + a.scaled(t * _phi(r * t))).apply(k)
    forced = g.scaled(t) + a.apply(g).scaled(t * t * _psi(r * t))
    return propagated + forced
