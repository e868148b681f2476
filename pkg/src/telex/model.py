"""Parameter and domain types for the finite-velocity motions.

Two families of processes are described here.  The one-dimensional
telegraph process moves at speed c and reverses direction at Poisson(lambda)
epochs; the drifted variant carries a separate (speed, rate) pair per
direction.  The planar process moves at speed c along one of the four
axis directions inside the horizontal strip 0 <= y <= L and turns +-90
degrees with probability 1/2 at Poisson(lambda) epochs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .errors import OutOfDomain, ParameterError


def _require_finite(name, value):
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")


class Direction1D(IntEnum):
    """Direction of 1D motion; RIGHT increases x."""

    RIGHT = 0
    LEFT = 1

    def reversed(self):
        return Direction1D(1 - self)


class Direction2D(IntEnum):
    """Planar axis direction d_j = (cos(j pi/2), sin(j pi/2)), j = 0..3."""

    RIGHT = 0
    UP = 1
    LEFT = 2
    DOWN = 3

    def turned(self, quarter_turns: int) -> "Direction2D":
        return Direction2D((self + quarter_turns) % 4)

    @property
    def unit(self):
        return _UNIT_VECTORS[self]


_UNIT_VECTORS = {
    Direction2D.RIGHT: (1.0, 0.0),
    Direction2D.UP: (0.0, 1.0),
    Direction2D.LEFT: (-1.0, 0.0),
    Direction2D.DOWN: (0.0, -1.0),
}


@dataclass(frozen=True)
class TelegraphParams:
    """Symmetric telegraph motion: speed c > 0, reversal rate lam >= 0.

    lam = 0 is allowed and gives straight-line motion.
    """

    c: float
    lam: float

    def __post_init__(self):
        _require_finite("c", self.c)
        _require_finite("lam", self.lam)
        if self.c <= 0:
            raise ParameterError(f"speed c must be positive, got {self.c}")
        if self.lam < 0:
            raise ParameterError(f"rate lam must be >= 0, got {self.lam}")


@dataclass(frozen=True)
class DriftTelegraphParams:
    """Asymmetric telegraph motion.

    Rightward legs run at speed c0 and end at rate lam0, leftward legs
    at speed c1 / rate lam1.  All four must be strictly positive.
    """

    c0: float
    c1: float
    lam0: float
    lam1: float

    def __post_init__(self):
        for name in ("c0", "c1", "lam0", "lam1"):
            value = getattr(self, name)
            _require_finite(name, value)
            if value <= 0:
                raise ParameterError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        _require_finite("a", self.a)
        _require_finite("b", self.b)
        if not self.a < self.b:
            raise ParameterError(f"need a < b, got [{self.a}, {self.b}]")

    @property
    def width(self):
        return self.b - self.a

    def contains(self, x) -> bool:
        return self.a <= x <= self.b


@dataclass(frozen=True)
class PlanarStripProblem:
    """Planar motion inside the strip 0 <= y <= L.

    The strip is unbounded in x, so only the height L and the motion
    parameters matter.  A strictly positive turn rate is required; with
    lam = 0 the planar motion never turns and the exit law is degenerate.
    """

    params: TelegraphParams
    L: float

    def __post_init__(self):
        _require_finite("L", self.L)
        if self.L <= 0:
            raise ParameterError(f"strip height L must be positive, got {self.L}")
        if self.params.lam <= 0:
            raise ParameterError("planar strip problem needs lam > 0")

    @property
    def c(self):
        return self.params.c

    @property
    def lam(self):
        return self.params.lam


def validate_interval_start(interval: Interval, x: float) -> None:
    """Check a <= x <= b, raising OutOfDomain otherwise."""
    _require_finite("x", x)
    if not interval.contains(x):
        raise OutOfDomain(
            f"start x={x} outside [{interval.a}, {interval.b}]"
        )


def validate_strip_start(problem: PlanarStripProblem, y: float) -> None:
    """Check 0 <= y <= L, raising OutOfDomain otherwise."""
    _require_finite("y", y)
    if not 0.0 <= y <= problem.L:
        raise OutOfDomain(f"start y={y} outside [0, {problem.L}]")
