"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so keep the split between
"bad input" (ValidationError), "a numerical invariant broke at runtime"
(InvariantError) and "file is not a valid container" (FormatError).
"""


class PhotonwfError(Exception):
    """Base class for all package errors."""


class ValidationError(PhotonwfError, ValueError):
    """Invalid argument or precondition violation."""


class InvariantError(PhotonwfError, RuntimeError):
    """A numerical invariant that should hold by construction failed."""


class FormatError(PhotonwfError, ValueError):
    """Malformed or inconsistent .pwf container."""
