"""Exception types raised by qohhg.

Every numerical-domain failure derives from :class:`NumericalDomainError`
so the command-line front end can map it to a single exit code.
"""


class NumericalDomainError(ValueError):
    """An input lies outside the range where a routine is reliable."""


class TruncationError(NumericalDomainError):
    """The Fock-space truncation is too small for the requested accuracy."""


class ConditioningError(NumericalDomainError):
    """A Gram or normal matrix is too ill-conditioned to invert safely."""


class LaguerreOverflowError(NumericalDomainError, OverflowError):
    """A Laguerre value left the linear-domain range (|L| > 1e280)."""


class DimensionMismatchError(ValueError):
    """Two Fock vectors or operators do not share a truncation size."""


class NotNormalizedError(ValueError):
    """A state that must be normalized deviates from unit norm."""
