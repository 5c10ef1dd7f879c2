"""Exception types shared across the package.

The CLI maps ConfigError to exit code 2 and ResourceLimitError to exit
code 3; everything else is a bug and propagates.
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class RegimeError(ValueError):
    """The requested quantity does not exist in this coupling regime."""


class StateValidationError(ValueError):
    """A state constructor was given inconsistent or unnormalizable input."""


class InsufficientDataError(RuntimeError):
    """A series does not carry enough structure for the requested estimate."""


class ResourceLimitError(RuntimeError):
    """An exact simulation was requested beyond its configured size bound."""


class ConfigError(ValueError):
    """Invalid run configuration; message carries a field-path diagnostic."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
