"""Exception types shared across the package."""


class BlcaError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(BlcaError):
    """Matrix blocks or vectors have incompatible dimensions."""


class IrrationalEntry(BlcaError):
    """An entry could not be parsed as an exact rational."""


class NotWellDefined(BlcaError):
    """Block data does not define a homomorphism (torsion congruences fail)."""


class NotProper(BlcaError):
    """Operation requires a proper datum (compact joint kernel, open images)."""


class Degenerate(BlcaError):
    """Operation requires a nondegenerate datum."""


class EmptyDatum(BlcaError):
    """All exponent indices were removed; carries the resolved constant."""

    def __init__(self, message, resolution=None):
        super().__init__(message)
        self.resolution = resolution


class TooLarge(BlcaError):
    """Finite enumeration aborted because the group order exceeds the bound."""


class DimensionTooLarge(BlcaError):
    """A target has more dimensions than the scalar probe can parametrize."""


class SingularDenominator(BlcaError):
    """The gaussian denominator matrix is singular (a degenerate noncompact
    direction escaped to infinity)."""


class BadExponent(BlcaError):
    """Exponent outside [1, oo] or unsupported for the requested operation."""


class NotUnitExponent(BlcaError):
    """The kernel reduction only applies at an index whose exponent is 1."""


class BadSubgroup(BlcaError):
    """The supplied subgroup does not satisfy the operation's hypotheses."""
