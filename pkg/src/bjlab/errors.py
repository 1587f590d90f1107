"""Exception types raised by bjlab."""


class BJLabError(ValueError):
    """Base class for all bjlab errors."""


class InvalidParameterError(BJLabError):
    pass


class ShiftOutOfRangeError(BJLabError):
    pass


class ConstellationError(BJLabError):
    """Empty constellation or an atom outside the grid."""


class ConstellationOutOfBandError(ConstellationError):
    pass


class GridError(BJLabError):
    """Length, parity or shape mismatch between grids."""


class WavFormatError(BJLabError):
    pass


class PreconditionError(BJLabError):
    pass
