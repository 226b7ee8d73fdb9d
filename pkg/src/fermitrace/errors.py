"""Exception hierarchy shared across the package."""


class FermitraceError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(FermitraceError, ValueError):
    """Malformed or inconsistent input (bad intervals, bad region spec, ...)."""


class DomainError(FermitraceError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ResourceLimitError(FermitraceError, RuntimeError):
    """A requested computation exceeds a configured resource cap."""


class NumericsError(FermitraceError, ArithmeticError):
    """A numerical routine failed to converge to the requested accuracy."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class GeometryError(FermitraceError, RuntimeError):
    """Persistent geometric degeneracy (ray on edge/vertex after jitter)."""


class CapabilityError(FermitraceError, NotImplementedError):
    """Operation not supported for the given shape or configuration."""


class FitError(FermitraceError, ValueError):
    """Least-squares design is rank deficient or under-sampled."""
