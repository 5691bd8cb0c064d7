"""Exception hierarchy for green_bounds.

Every error derives from GreenBoundsError and from the closest builtin, so
callers that only know about ValueError and friends keep working.
"""


class GreenBoundsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GreenBoundsError, ValueError):
    """An argument lies outside the domain of an operation."""


class OrbitCoincidenceError(GreenBoundsError, ValueError):
    """z lies in the group orbit of w, so the singular sum diverges."""


class UnsupportedFamilyError(GreenBoundsError, ValueError):
    """The requested operation is not available for this subgroup family."""


class GenusZeroError(GreenBoundsError, ValueError):
    """The modular curve has genus zero; the canonical form is undefined."""


class AdmissibilityError(GreenBoundsError, ValueError):
    """A hypothesis of the Green function bound theorem is violated."""


class ConfigError(GreenBoundsError, ValueError):
    """Invalid run configuration (flags or config file)."""


class NonConvergentSeriesError(GreenBoundsError, ArithmeticError):
    """A hypergeometric series did not meet its tolerance within the term cap."""


class CertificationError(GreenBoundsError, RuntimeError):
    """A certified computation could not be certified (bad entry bound, oracle mismatch)."""
