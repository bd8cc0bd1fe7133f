"""Exception types shared across the package.

The command line maps these onto process exit codes: parameter and domain
errors exit with status 2, capacity errors with status 3.
"""


class ParameterError(ValueError):
    """A caller-supplied parameter is outside the documented range."""


class DomainError(ParameterError):
    """A numeric argument lies outside the domain of the requested function."""


class CapacityError(RuntimeError):
    """The request exceeds a configured size cap and was refused, not attempted."""
