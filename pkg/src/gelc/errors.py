"""Exception hierarchy shared across the package."""


class GelcError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GelcError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class ModelError(GelcError, ValueError):
    """A source model is invalid or unusable for the requested operation."""


class OrderBoundaryError(GelcError, ValueError):
    """succ/pred was requested at the extreme element of a total order."""


class DecodeError(GelcError, ValueError):
    """A bit stream or block sequence is not decodable (corrupt input)."""


class BudgetError(GelcError, RuntimeError):
    """A configured work budget (blocks, enumeration size) was exhausted."""
