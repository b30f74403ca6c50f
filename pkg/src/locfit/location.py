"""Estimators of the populational minimum and sample-minimum order statistics.

All four estimators pull the sample minimum left by a dispersion-scaled
amount that shrinks with the sample size n:

    c1 = min - |min * CV| / log_k(n)          (log base k, default 10)
    c2 = min - std / n
    c3 = min - std * sqrt(ln ln n / (2 n))    (iterated-logarithm rate)
    c4 = min - std * sqrt(-ln(nu/2) / (2 n))  (DKW band at confidence 1 - nu)

CV is the coefficient of variation, std / mean, with the (n-1)-denominator
standard deviation.  The modulus in c1 keeps the pull-back leftward when the
sample minimum is negative.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    SampleTooSmallError,
    UndefinedCVError,
    ZeroDispersionWarning,
    ZeroMinimumWarning,
)

__all__ = [
    "EstimatorConfig",
    "LocationEstimate",
    "ESTIMATOR_NAMES",
    "coefficient_of_variation",
    "estimate_c1",
    "estimate_c2",
    "estimate_c3",
    "estimate_c4",
    "estimate",
    "min_cdf",
    "min_quantile",
    "shift_sample",
]

ESTIMATOR_NAMES = ("c1", "c2", "c3", "c4")


@dataclass(frozen=True)
class EstimatorConfig:
    """Tunables shared by the estimators and the iterated-minimum method."""

    k_base: float = 10.0
    nu: float = 0.05
    q_min: float = 0.5

    def __post_init__(self):
        if not self.k_base > 1.0:
            raise DomainError(f"k_base must be > 1, got {self.k_base!r}")
        if not 0.0 < self.nu < 1.0:
            raise DomainError(f"nu must lie in (0, 1), got {self.nu!r}")
        if not 0.0 < self.q_min < 1.0:
            raise DomainError(f"q_min must lie in (0, 1), got {self.q_min!r}")


@dataclass(frozen=True)
class LocationEstimate:
    """An estimate of the populational minimum, never above the sample minimum."""

    c_hat: float
    method: str
    sample_min: float
    sample_size: int
    config_used: EstimatorConfig = field(default_factory=EstimatorConfig)


def _as_sample(sample, min_size):
    v = np.asarray(sample, dtype=float)
    if v.ndim != 1:
        v = v.ravel()
    if v.size < min_size:
        raise SampleTooSmallError(
            f"need at least {min_size} observations, got {v.size}"
        )
    return v


def _sd(values):
    return float(values.std(ddof=1))


def coefficient_of_variation(sample):
    """Sample standard deviation over sample mean (n-1 denominator)."""
    v = _as_sample(sample, 2)
    mean = float(v.mean())
    if mean == 0.0:
        raise UndefinedCVError("coefficient of variation undefined: sample mean is 0")
    return _sd(v) / mean


def _warn_if_degenerate(sd, method):
    if sd == 0.0:
        warnings.warn(
            f"{method}: zero-dispersion sample, estimate equals the sample minimum",
            ZeroDispersionWarning,
            stacklevel=3,
        )


def estimate_c1(sample, config=None):
    config = config or EstimatorConfig()
    v = _as_sample(sample, 2)
    cv = coefficient_of_variation(v)
    m = float(v.min())
    _warn_if_degenerate(_sd(v), "c1")
    denom = math.log(v.size) / math.log(config.k_base)
    c = m - abs(m * cv) / denom
    return LocationEstimate(c, "c1", m, int(v.size), config)


def estimate_c2(sample, config=None):
    config = config or EstimatorConfig()
    v = _as_sample(sample, 2)
    m = float(v.min())
    sd = _sd(v)
    _warn_if_degenerate(sd, "c2")
    return LocationEstimate(m - sd / v.size, "c2", m, int(v.size), config)


def estimate_c3(sample, config=None):
    config = config or EstimatorConfig()
    v = _as_sample(sample, 3)  # ln ln n must be positive
    m = float(v.min())
    sd = _sd(v)
    _warn_if_degenerate(sd, "c3")
    c = m - sd * math.sqrt(math.log(math.log(v.size)) / (2.0 * v.size))
    return LocationEstimate(c, "c3", m, int(v.size), config)


def estimate_c4(sample, config=None):
    config = config or EstimatorConfig()
    v = _as_sample(sample, 2)
    m = float(v.min())
    sd = _sd(v)
    _warn_if_degenerate(sd, "c4")
    c = m - sd * math.sqrt(-math.log(config.nu / 2.0) / (2.0 * v.size))
    return LocationEstimate(c, "c4", m, int(v.size), config)


_ESTIMATORS = {
    "c1": estimate_c1,
    "c2": estimate_c2,
    "c3": estimate_c3,
    "c4": estimate_c4,
}


def estimate(method, sample, config=None):
    """Dispatch to one of the estimators by its registry name c1..c4."""
    try:
        fn = _ESTIMATORS[method]
    except KeyError:
        raise DomainError(
            f"unknown estimator {method!r}; valid names: {', '.join(ESTIMATOR_NAMES)}"
        ) from None
    return fn(sample, config)


def min_cdf(base_cdf, n, x):
    """cdf of the minimum of n iid draws: 1 - [1 - F(x)]^n."""
    if n < 1:
        raise DomainError(f"min_cdf requires n >= 1, got {n}")
    f = np.asarray(base_cdf(x), dtype=float)
    out = -np.expm1(n * np.log1p(-np.clip(f, 0.0, 1.0)))
    return float(out) if out.ndim == 0 else out


def min_quantile(base_quantile, n, q):
    """Quantile of the minimum of n iid draws: F^-1(1 - (1 - q)^(1/n))."""
    if n < 1:
        raise DomainError(f"min_quantile requires n >= 1, got {n}")
    qa = np.asarray(q, dtype=float)
    if np.any(~((qa > 0.0) & (qa < 1.0))):
        raise DomainError(f"min_quantile requires q in (0, 1), got {q!r}")
    inner = -np.expm1(np.log1p(-qa) / n)
    return base_quantile(float(inner) if inner.ndim == 0 else inner)


def shift_sample(sample, c):
    """Elementwise sample - c; warns when the shifted minimum is exactly 0."""
    v = np.asarray(sample, dtype=float) - c
    if v.size and float(v.min()) == 0.0:
        warnings.warn(
            "shifted sample has minimum exactly 0; densities with f(0) = 0 "
            "reject it",
            ZeroMinimumWarning,
            stacklevel=2,
        )
    return v
