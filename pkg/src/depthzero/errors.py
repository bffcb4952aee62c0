"""Typed errors shared across the toolkit.

The CLI maps these onto exit codes: parse errors exit 2, budget errors
exit 3, invariant violations exit 4.
"""


class DomainError(ValueError):
    """Input outside the operation's domain."""


class DimensionError(DomainError):
    """Vector/matrix lengths do not match."""


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured size budget."""


class InvariantViolation(RuntimeError):
    """A machine-checked claim failed; ``check`` names the falsified claim."""

    def __init__(self, check, message=""):
        self.check = check
        super().__init__(f"{check}: {message}" if message else check)


class PrecisionError(ArithmeticError):
    """Working precision is insufficient to decide the result."""


class UnsupportedCase(RuntimeError):
    """Requested computation is outside the supported (e.g. split) case."""


class CoverageError(RuntimeError):
    """A point could not be located in an (incomplete) fan."""


class SpecParseError(ValueError):
    """A group-spec or vector file failed to parse."""
