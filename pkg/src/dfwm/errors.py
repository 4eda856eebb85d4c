"""Exception types shared across the package."""


class PhysicsDomainError(ValueError):
    """An input is outside the physical domain of an operation."""


class AboveThresholdError(PhysicsDomainError):
    """Phase-conjugate coupling |kappa|L is at or above the pi/2 gain threshold."""


class SingularSteadyStateError(PhysicsDomainError):
    """The steady-state linear system is numerically singular.

    Carries the estimated condition number of the (trace-constrained)
    Liouvillian as ``condition_number``.
    """

    def __init__(self, message, condition_number=float("inf")):
        super().__init__(message)
        self.condition_number = condition_number


class IntegrationConvergenceError(RuntimeError):
    """Velocity-average quadrature did not converge within the node budget."""

    def __init__(self, message, relative_change, nodes):
        super().__init__(message)
        self.relative_change = relative_change
        self.nodes = nodes


class InsufficientBrightnessError(PhysicsDomainError):
    """Seed too dim for linearized photon-number statistics."""


class ConfigError(ValueError):
    """Run-configuration parse or validation failure.

    ``line`` is the 1-based line number in the config text, or None when the
    error is not tied to a specific line.
    """

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
