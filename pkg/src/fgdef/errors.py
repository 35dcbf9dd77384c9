class FgdefError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FgdefError):
    """Malformed or out-of-contract input (CLI exit code 1)."""


class ResourceLimitError(FgdefError):
    """An exact computation would exceed the enumeration budget (CLI exit code 2)."""
