class CatWignerError(Exception):
    """Base class for all package errors."""


class ZeroNormState(CatWignerError, ValueError):
    """Raised when a computation needs a normalizable state but got the zero vector."""


class TruncationTooSmall(CatWignerError, ValueError):
    """Raised when a truncated Fock expansion leaves non-negligible weight outside the basis."""


class GridMismatch(CatWignerError, ValueError):
    pass


class UnknownPanel(CatWignerError, ValueError):
    pass
