"""Exception and warning types shared across the package."""


class LocfitError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LocfitError, ValueError):
    """A parameter, argument or probability lies outside its admissible domain."""


class ContractError(LocfitError, ValueError):
    """An operation was called with inputs violating its contract (e.g. empty sample)."""


class DegenerateTruncationError(LocfitError, ValueError):
    """Truncation point has no probability mass above it (F(c) = 1)."""


class SampleTooSmallError(LocfitError, ValueError):
    """The sample has too few observations for the requested statistic."""


class UndefinedCVError(LocfitError, ValueError):
    """Coefficient of variation is undefined (sample mean is zero)."""


class FitFailedError(LocfitError):
    """No grid start produced a usable likelihood.

    Carries a ``diagnostics`` dict describing the attempted starts.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class CrossValidationError(LocfitError):
    """A cross-validation fold failed to fit; ``fold`` names the failing fold."""

    def __init__(self, message, fold=None):
        super().__init__(message)
        self.fold = fold


class MeasurementError(LocfitError):
    """A measured child process failed; ``run_index`` names the failing run."""

    def __init__(self, message, run_index=None):
        super().__init__(message)
        self.run_index = run_index


class SampleFormatError(LocfitError, ValueError):
    """A sample file could not be parsed; ``line`` is the 1-based offending line."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class ZeroDispersionWarning(UserWarning):
    """Sample has zero dispersion; location estimate degenerates to the sample minimum."""


class ZeroMinimumWarning(UserWarning):
    """Shifted sample has minimum exactly 0; densities with f(0) = 0 will reject it."""
