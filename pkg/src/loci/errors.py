"""Exception hierarchy shared by every loci module."""


class LociError(Exception):
    """Base class for all errors raised by loci."""


class InvalidArgumentError(LociError, ValueError):
    """An argument is outside the domain of the operation."""


class PreconditionError(LociError, ValueError):
    """The input image or curve violates a documented precondition."""


class DegenerateInputError(LociError):
    """The picture has no meaningful boundary (single pixel, bare segment)."""


class MalformedCurveError(LociError):
    """A black run has an attachment pattern that rules out FUA parity.

    Raised when an image does not satisfy the thin, 4-connected,
    spike-free conditions; applying CoTRA first is the usual remedy.
    """

    def __init__(self, message, row=None, run=None):
        super().__init__(message)
        self.row = row
        self.run = run


class NetpbmError(LociError, ValueError):
    """Base class for Netpbm parse failures; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class MalformedHeaderError(NetpbmError):
    pass


class TruncatedDataError(NetpbmError):
    pass


class UnsupportedFormatError(NetpbmError):
    pass
