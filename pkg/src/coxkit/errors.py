"""Exception types shared across the package.

The CLI maps these onto exit codes: usage errors exit 2, resource caps exit 3.
Failed verification checks are ordinary report data, not exceptions.
"""


class CoxkitError(Exception):
    """Base class for all package errors."""


class UsageError(CoxkitError):
    """Precondition violation: bad parameters, conductor mismatch, parse error."""


class ResourceCapError(CoxkitError):
    """A configured enumeration or search budget was exceeded."""


class IntegrityError(CoxkitError):
    """An internal consistency check failed (catalog bug or impossible state)."""
