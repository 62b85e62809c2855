"""Exception types raised across the package."""


class QutritYBEError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(QutritYBEError, ValueError):
    pass


class BadShape(QutritYBEError, ValueError):
    pass


class BadSubsystem(QutritYBEError, ValueError):
    pass


class BadLabel(QutritYBEError, ValueError):
    pass


class NotNormalized(QutritYBEError, ValueError):
    pass


class BlockLeakage(QutritYBEError):
    """The Hamiltonian couples two different subsystem subspaces."""


class DegenerateSpectrum(QutritYBEError):
    """sin(theta) vanishes, so the bands collapse and H is zero."""


class ZeroFrequency(QutritYBEError, ValueError):
    pass


class NotConverged(QutritYBEError):
    pass
