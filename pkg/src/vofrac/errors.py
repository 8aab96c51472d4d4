"""Exception and warning types shared across the package."""


class VofracError(Exception):
    """Base class for all package errors."""


class PoleError(VofracError):
    """Gamma function evaluated at a non-positive integer."""


class DomainError(VofracError):
    """Argument outside the mathematical domain of an operation."""


class OrderRangeError(VofracError):
    """Fractional order outside the open interval (0, 1)."""


class AbscissaError(VofracError):
    """Transform requested at points not right of the convergence abscissa."""


class SingularAtOrigin(VofracError):
    """Classical transform of a non-locally-integrable function requested.

    Route such inputs through the regularized (finite-part) transform.
    """


class ContourError(VofracError):
    """Transform callable failed on an inversion contour node."""


class ParseError(VofracError):
    """Malformed case file."""


class ValidationError(VofracError):
    """Case data violates a structural invariant."""


class IoError(VofracError):
    """Report emission failed."""


class RegularizationWarning(UserWarning):
    """Singularity strength of a regularized integrand varies with time."""
