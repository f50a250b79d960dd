"""Exception hierarchy shared by all hauscomm modules."""


class HauscommError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(HauscommError):
    """Malformed or out-of-range argument (non-finite entries, empty families, ...)."""


class SingularMatrixError(HauscommError):
    """Matrix is singular or too close to singular to invert reliably.

    Carries the offending determinant in ``det``.
    """

    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class OriginExcludedError(HauscommError):
    """Operation undefined at the origin (dyadic shells tile R^n minus 0)."""


class CatalogMissError(HauscommError):
    """Unknown preset name; ``valid`` lists accepted names/grammars."""

    def __init__(self, message, valid=()):
        super().__init__(message)
        self.valid = tuple(valid)


class DomainRestrictionError(HauscommError):
    """Norm parameter outside the defining range of the space."""


class IntegrandEvaluationError(HauscommError):
    """Integrand returned a non-finite value; ``node`` is the offending point."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class ConstraintError(HauscommError):
    """Exponent bundle violates a theorem hypothesis; message names the inequality."""
