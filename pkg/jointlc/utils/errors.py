class JointLCError(Exception):
    """Base class of the errors raised by jointlc."""


class UsageError(JointLCError):
    """Bad command line."""


class ConjugateSymmetryError(JointLCError, ValueError):
    """A DFT slice stack whose inverse transform is not real."""


class ImageFormatError(JointLCError, ValueError):
    """Unsupported, mixed or malformed image slices."""


class TnsFormatError(JointLCError, ValueError):
    """Base class of .tns parsing errors."""


class BadMagicError(TnsFormatError):
    pass


class UnsupportedVersionError(TnsFormatError):
    pass


class UnsupportedDtypeError(TnsFormatError):
    pass


class TruncatedPayloadError(TnsFormatError):
    pass


class TrailingDataError(TnsFormatError):
    pass
