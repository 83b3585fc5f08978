"""Exception hierarchy shared by every gforge module."""


class GforgeError(Exception):
    """Base class for all library errors."""


class DivisionByZero(GforgeError, ZeroDivisionError):
    pass


class InsufficientPrecision(GforgeError):
    """A twin-float value lost the agreement between its two approximations."""


class PrecisionCapExceeded(GforgeError):
    pass


class FieldMismatch(GforgeError):
    pass


class InvalidModulus(GforgeError, ValueError):
    pass


class DimensionMismatch(GforgeError, ValueError):
    pass


class InvalidIndex(GforgeError, IndexError):
    pass


class InvalidMatrix(GforgeError, ValueError):
    pass


class RingMismatch(GforgeError):
    pass


class ArityMismatch(GforgeError, ValueError):
    pass


class ZeroPolynomial(GforgeError, ValueError):
    pass


class ParseError(GforgeError):
    """Malformed input text; ``pos`` is the 0-based offset of the offending token."""

    def __init__(self, message, pos=None, text=None):
        self.message = message
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)


class UnknownIndeterminate(ParseError):
    pass


class DivisionByNonConstant(ParseError):
    pass


class NotHomogeneous(GforgeError, ValueError):
    pass


class Cancelled(GforgeError):
    """Raised at a checkpoint after cancellation was requested."""


class NotZeroDimensional(GforgeError, ValueError):
    pass


class FieldNotSupported(GforgeError, TypeError):
    pass


class ModuliNotCoprime(GforgeError, ValueError):
    pass


class ShapeMismatch(GforgeError, ValueError):
    pass


class NoReconstruction(GforgeError, ValueError):
    pass


class NoReliableAnswer(GforgeError, ValueError):
    pass


class NotAHypersurface(GforgeError, ValueError):
    pass


class VerificationFailed(GforgeError):
    pass
