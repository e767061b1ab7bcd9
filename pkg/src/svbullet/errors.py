"""Exception hierarchy shared by all modules."""


class SVError(Exception):
    """Base class for all errors raised by svbullet."""


class ParseError(SVError, ValueError):
    """Malformed polynomial, ideal or cycle text."""


class RingMismatchError(SVError, ValueError):
    pass


class InputError(SVError, ValueError):
    """Structurally invalid input (inhomogeneous generator, bad coefficient, ...)."""


class ImproperCutError(SVError):
    """A divisor contains a component of the chunk it was meant to cut."""


class HullError(SVError):
    pass


class StabilizationError(SVError):
    """Hilbert-Samuel sampling did not stabilize within the cap."""


class NotInDiagonalError(SVError):
    pass


class AuditError(SVError, AssertionError):
    """An internal accounting identity failed; indicates a bug."""


class GenericityError(SVError):
    """Random choices kept landing on a degenerate configuration."""


class InstabilityError(GenericityError):
    """Fixed/moving classification disagreed across runs."""
