"""Exception hierarchy shared by every module."""


class MaassLiftError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MaassLiftError, ValueError):
    """Argument outside the domain of an operation (mismatched fields, bad index, ...)."""


class PrecisionError(MaassLiftError):
    """A requested quantity lies beyond the known precision."""


class PoleError(MaassLiftError, ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


class IdentificationError(MaassLiftError):
    """A series could not be written in the requested closed form."""

    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent


class RecognitionError(MaassLiftError):
    """No algebraic number of bounded degree and height matches a float."""
