"""Exception hierarchy shared by every msiq module."""


class MsiqError(Exception):
    """Base class for all errors raised by this package."""


class IoError(MsiqError):
    """A file could not be read or written."""


class DecodeError(MsiqError):
    """A file exists but is not a decodable supported image."""


class ShapeError(MsiqError):
    """Array dimensions do not match what the operation requires."""


class ParameterError(MsiqError):
    """An argument is outside the operation's domain."""


class DegenerateImageError(MsiqError):
    """Image mass is (near) zero; centroid and normalized moments are undefined."""


class DescriptorMismatchError(MsiqError):
    """Two moment descriptors disagree in order, scheme, or index layout."""


class UndefinedCorrelationError(MsiqError):
    """Rank correlation is undefined (zero rank variance on one side)."""
