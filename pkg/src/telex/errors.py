"""Exception types shared across the package."""


class TelexError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(TelexError, ValueError):
    """A parameter set violates its sign or finiteness constraints."""


class OutOfDomain(TelexError, ValueError):
    """A starting point lies outside the spatial domain."""


class NotNilpotent(TelexError):
    """Matrix passed to the nilpotent exponential has A^2 != 0."""


class NotRank1Recurrent(TelexError):
    """Matrix does not satisfy A^2 = trace(A) * A."""


class DegenerateAsymmetric(TelexError):
    """Drift rate is ~0 but the two direction regimes differ; refusing to guess."""


class DegenerateSymmetric(TelexError):
    """Drifted mean-exit-time formulas degenerate; use the driftless ones."""


class InvalidScale(TelexError):
    """Hydrodynamic scaling parameters out of range."""


class QuadratureFailure(TelexError):
    """A density integral did not converge to tolerance within budget."""


class NonConvergentTail(TelexError):
    """Endpoint-truncation refinement failed to stabilise."""


class EmptySample(TelexError):
    """No continuous exit samples available for density estimation."""


class SimulationDiverged(TelexError):
    """Event count exceeded the circuit-breaker limit."""
