"""Exception types raised by bergkern."""


class BergkernError(Exception):
    """Base class for all package errors."""


class DomainError(BergkernError, ValueError):
    """Input lies outside the domain where the quantity is defined."""


class PoleProximity(BergkernError, ValueError):
    """Argument is too close to a lattice point of an elliptic function."""


class NonConvergence(BergkernError, RuntimeError):
    """A series did not reach the requested tolerance within its term cap."""


class DimensionMismatch(BergkernError, ValueError):
    """Multi-index or point has the wrong length for the domain."""


class StencilOutOfDomain(BergkernError, ValueError):
    """A finite-difference stencil left the domain of the evaluated field."""
