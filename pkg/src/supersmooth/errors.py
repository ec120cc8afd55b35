"""Exception types shared across the package."""


class SupersmoothError(Exception):
    """Base class for all package errors."""


class InputError(SupersmoothError):
    """Arguments violate a documented precondition."""


class InvalidGeometryError(SupersmoothError):
    """A point configuration does not form the requested cell."""


class CapReachedError(SupersmoothError):
    """A degeneracy scan hit its cap; only a lower bound is available."""


class VerificationError(SupersmoothError):
    """An internal exact certificate failed to validate."""
