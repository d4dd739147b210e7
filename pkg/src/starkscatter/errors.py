"""Exception hierarchy shared by all modules."""


class StarkScatterError(Exception):
    """Base class for all library errors."""


class DomainError(StarkScatterError):
    """Input lies outside the mathematical domain of an operation."""


class BudgetError(StarkScatterError):
    """A numerical error budget (quadrature tail, tolerance) was exceeded.

    Carries optional context so front ends can report which budget failed.
    """

    def __init__(self, message, module=None, operation=None, budget=None):
        super().__init__(message)
        self.module = module
        self.operation = operation
        self.budget = budget


class ConvergenceError(StarkScatterError):
    """An iterative procedure failed to converge within its budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(StarkScatterError):
    """Malformed or inconsistent run configuration."""
