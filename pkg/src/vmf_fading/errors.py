"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """Numerical integration did not reach the requested tolerance."""


class SamplingError(ValueError):
    """A time grid violates the sampling-rate contract of the simulator."""
