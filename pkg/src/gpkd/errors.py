"""Exception types raised across the package."""


class GpkdError(Exception):
    """Base class for all package errors."""


class GraphError(GpkdError, ValueError):
    """Malformed graph input: self-loops, out-of-range vertices, bad family specs."""


class DomainError(GpkdError, ValueError):
    """Parameters outside the domain where an operation is defined."""


class UnreachablePairError(GpkdError, ValueError):
    """Geodesic machinery was asked about vertices in different components."""


class GeodesicLimitExceeded(GpkdError, RuntimeError):
    """Geodesic enumeration produced more paths than the caller allowed."""


class BudgetExhausted(GpkdError, RuntimeError):
    """An exact search ran out of its node or time budget before proving optimality."""

    def __init__(self, message, nodes_explored=0, best_value=None):
        super().__init__(message)
        self.nodes_explored = nodes_explored
        self.best_value = best_value


class MonotonicityViolation(GpkdError, AssertionError):
    """A computed lattice table broke the (k, d) ordering; indicates a solver bug."""
