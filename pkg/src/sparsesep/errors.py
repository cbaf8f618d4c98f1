"""Exception hierarchy shared by every module.

The CLI maps these onto its exit codes: verification failures exit 1,
domain/refusal errors exit 2, invariant violations exit 3.
"""


class SparseSepError(Exception):
    """Base class for all library errors."""


class DomainError(SparseSepError, ValueError):
    """An argument is outside the operation's domain."""


class RefusalError(SparseSepError):
    """The input exceeds a configured size cap for an exhaustive search."""


class CertificationError(SparseSepError):
    """A certificate component failed validation."""


class InvariantError(SparseSepError, RuntimeError):
    """An internal invariant was violated; indicates a bug."""
