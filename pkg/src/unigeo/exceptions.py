"""Exception and warning classes raised across unigeo."""


class UnigeoError(Exception):
    """Base class for every error raised by this package."""


class ConvergenceFailure(UnigeoError):
    pass


class NotHermitian(UnigeoError, ValueError):
    pass


class NotUnitary(UnigeoError, ValueError):
    pass


class DimensionMismatch(UnigeoError, ValueError):
    pass


class InvalidGauge(UnigeoError, ValueError):
    pass


class RankTooLarge(UnigeoError, ValueError):
    pass


class RankMismatch(UnigeoError, ValueError):
    pass


class NotProjection(UnigeoError, ValueError):
    pass


class NotOrthonormal(UnigeoError, ValueError):
    pass


class NotCodiagonal(UnigeoError, ValueError):
    pass


class OutOfDomain(UnigeoError, ValueError):
    pass


class GapTooLarge(UnigeoError, ValueError):
    pass


class NondegeneracyRequired(UnigeoError, ValueError):
    pass


class OptimizerStalled(UnigeoError):
    """Local descent made no progress; treated as inconclusive by the harness."""


class NonUniqueWarning(UserWarning):
    """The exponent sits on the spectral boundary ``||Z|| = pi``; minimizers are not unique."""


class BoundaryNonUnique(UserWarning):
    """Two projections with ``||P - Q|| = 1``; the direct rotation is not unique."""
