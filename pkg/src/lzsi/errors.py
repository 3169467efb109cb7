"""Exception hierarchy shared by the library and the CLI."""


class LZSIError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LZSIError, ValueError):
    """Input violates a precondition (bad positions, empty text, ...)."""


class OutOfRangeError(LZSIError, IndexError):
    """A position, rank or index lies outside the structure."""


class FormatError(LZSIError):
    """A serialized container could not be loaded."""


class BadMagicError(FormatError):
    def __init__(self, msg="bad magic"):
        super().__init__(msg)


class UnsupportedVersionError(FormatError):
    def __init__(self, msg="unsupported version"):
        super().__init__(msg)


class TruncatedError(FormatError):
    def __init__(self, msg="truncated section"):
        super().__init__(msg)


class ChecksumError(FormatError):
    def __init__(self, msg="checksum failure"):
        super().__init__(msg)
