"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: configuration problems
exit with 1, domain/geometry violations with 2, solver failures with 3.
"""


class PcubError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(PcubError):
    """Malformed or inconsistent run configuration."""


class DomainError(PcubError):
    """Input outside the mathematical domain of an operation."""


class CollisionError(DomainError):
    """The two exponent families overlap (even ambient dimension), so the
    two-slot splitting of a component function is not unique."""


class DegenerateMeasureError(DomainError):
    """Measure has too few support points for the requested rule size."""

    def __init__(self, msg, support_size=None):
        super().__init__(msg)
        self.support_size = support_size


class SolverError(PcubError):
    """An iterative solver failed to converge."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual
