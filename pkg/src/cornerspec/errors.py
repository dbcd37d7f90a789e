"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: validation problems exit 1,
numerical/resource failures exit 2, unsupported queries exit 3.
"""


class CornerSpecError(Exception):
    """Base class for all package errors."""


class ValidationError(CornerSpecError):
    """Input data violates a structural invariant (bad file, bad complex)."""


class DomainError(CornerSpecError):
    """Arguments outside an operation's domain (e.g. degree above face dim)."""


class NumericalError(CornerSpecError):
    """An iterative numerical procedure failed to converge."""


class ResourceError(CornerSpecError):
    """A size guard was exceeded (mesh subdivision, dense solver dimension)."""
