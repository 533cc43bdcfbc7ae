"""Exception hierarchy."""


class HtkError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(HtkError, ValueError):
    pass


class SingularMatrix(HtkError, ArithmeticError):
    pass


class NoAntipode(HtkError):
    """The bialgebra has no convolution inverse of the identity."""


class NonBijectiveAntipode(HtkError):
    pass


class NotGalois(HtkError):
    """The canonical map is not bijective."""


class CoinvariantsTooLarge(NotGalois):
    """The coinvariant subalgebra is bigger than the scalars."""


class IdentityFailure(HtkError):
    """A translation-map identity failed on data that passed earlier checks."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ImplementationFault(HtkError):
    """A statement that holds unconditionally came out false."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BadCharacteristic(HtkError, ValueError):
    pass


class NoRootOfUnity(HtkError, ValueError):
    pass


class FormatError(HtkError, ValueError):
    """Malformed structure file; ``location`` points at the offending entry."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
