"""Model-quality metrics and cross-method comparison tables.

The four information criteria all penalize -2 * log-likelihood by the
charged parameter count k:

    aic  = neg2l + 2k
    caic = neg2l + 2kn / (n - k - 1)
    hqic = neg2l + 2k ln(ln n)
    bic  = neg2l + k ln(n)

k charges the family's parameters, plus one for inferC (its location is
optimized); the estimator methods and iteratedC add nothing (their shift is
a pre-fit statistic resp. implied by theta).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import quad

from . import mle
from .errors import CrossValidationError, DomainError, LocfitError

__all__ = [
    "MetricSet",
    "FitRow",
    "ComparisonReport",
    "METRIC_NAMES",
    "parameter_count",
    "metrics",
    "metric_value",
    "cv_folds",
    "cross_validated_neg2l",
    "quality_deltas",
    "win_counts",
    "expected_log_likelihood",
]

METRIC_NAMES = ("neg2l", "aic", "caic", "hqic", "bic", "cv_neg2l")


@dataclass(frozen=True)
class MetricSet:
    neg2l: float
    aic: float
    caic: float
    hqic: float
    bic: float
    cv_neg2l: Optional[float]
    k: int
    n: int


@dataclass(frozen=True)
class FitRow:
    """One comparison-table row: a fitted (sample set, family, method) cell."""

    sample_set: str
    family: str
    method: str
    metrics: MetricSet


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple
    quality_deltas: dict
    win_counts: dict
    second_place_counts: dict
    timing: tuple


def parameter_count(fit):
    """Parameters charged to the criteria: family count, +1 only for inferC."""
    return len(fit.params) + (1 if fit.method == "inferC" else 0)


def metrics(fit, n, cv_neg2l=None):
    """All four criteria plus neg2l for one fit outcome on a sample of size n."""
    k = parameter_count(fit)
    if n <= k + 1:
        raise DomainError(f"caic undefined: need n > k + 1 (n={n}, k={k})")
    neg2l = fit.neg2l
    return MetricSet(
        neg2l=neg2l,
        aic=neg2l + 2.0 * k,
        caic=neg2l + 2.0 * k * n / (n - k - 1.0),
        hqic=neg2l + 2.0 * k * math.log(math.log(n)),
        bic=neg2l + k * math.log(n),
        cv_neg2l=cv_neg2l,
        k=k,
        n=int(n),
    )


def metric_value(metric_set, metric):
    if metric not in METRIC_NAMES:
        raise DomainError(f"unknown metric {metric!r}; valid: {', '.join(METRIC_NAMES)}")
    value = getattr(metric_set, metric)
    if value is None:
        raise DomainError(f"metric {metric!r} was not computed for this row")
    return value


def cv_folds(n, folds, seed):
    """Disjoint covering folds (sizes differing by at most 1) of a seeded shuffle."""
    if folds < 2:
        raise DomainError(f"folds must be >= 2, got {folds}")
    if n < folds:
        raise DomainError(f"need n >= folds, got n={n}, folds={folds}")
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(part) for part in np.array_split(perm, folds)]


def _heldout_neg2l(family, outcome, test_values, penalty_value):
    # held-out points outside the fitted (shifted) support score the penalty
    shift = outcome.c_hat if outcome.c_hat is not None else 0.0
    terms = family.log_pdf(outcome.params, np.asarray(test_values, dtype=float) - shift)
    terms = np.where(np.isfinite(terms), terms, penalty_value)
    return -2.0 * float(np.sum(terms))


def cross_validated_neg2l(
    family,
    method,
    sample,
    folds=5,
    seed=0,
    config=None,
    settings=None,
    grid=None,
):
    """Mean held-out -2 log-likelihood over seeded contiguous folds.

    Each fold refits the full method pipeline on the complement (location
    estimates are recomputed from training data only) and scores the held-out
    points under the fitted, shifted model.
    """
    values = np.asarray(sample, dtype=float)
    parts = cv_folds(values.size, folds, seed)
    settings = settings or mle.OptimizerSettings()
    total = 0.0
    for i, test_idx in enumerate(parts):
        mask = np.ones(values.size, dtype=bool)
        mask[test_idx] = False
        train, test = values[mask], values[test_idx]
        try:
            gridfit = mle.fit(method, family, train, config=config, grid=grid, settings=settings)
        except LocfitError as exc:
            raise CrossValidationError(
                f"fold {i} failed to fit {family.name}/{method}: {exc}", fold=i
            ) from exc
        total += _heldout_neg2l(family, gridfit.best, test, settings.penalty_value)
    return total / len(parts)


def _group_rows(rows):
    groups = {}
    for row in rows:
        groups.setdefault(row.sample_set, []).append(row)
    return groups


def quality_deltas(rows, metric):
    """Per row: best (lowest) metric value in its sample set minus the row's value.

    Zero marks the winner of each sample set; every other delta is negative.
    """
    deltas = {}
    for sample_set, group in _group_rows(rows).items():
        best = min(metric_value(r.metrics, metric) for r in group)
        for r in group:
            deltas[(sample_set, r.family, r.method)] = best - metric_value(r.metrics, metric)
    return deltas


def win_counts(rows, metric, place=1):
    """Count of first (or second) places per (family, method) under the metric.

    One contest per sample set over the rows given; ties are broken by fewer
    charged parameters, then lexicographic family name.
    """
    if place not in (1, 2):
        raise DomainError(f"place must be 1 or 2, got {place}")
    counts = {}
    for _, group in _group_rows(rows).items():
        ranked = sorted(
            group,
            key=lambda r: (metric_value(r.metrics, metric), r.metrics.k, r.family),
        )
        if len(ranked) >= place:
            key = (ranked[place - 1].family, ranked[place - 1].method)
            counts[key] = counts.get(key, 0) + 1
    return counts


def expected_log_likelihood(model_family, model_params, c, true_family, true_params):
    """Expected log density of the shifted model under the true distribution.

    Computes integral of log f_model(x - c) dF_true(x); this is the large-n
    limit of the average log-likelihood and is -inf as soon as the true
    distribution puts mass below the model's shifted support.
    """
    model_family.check_params(model_params)
    true_family.check_params(true_params)
    support_start = c + model_family.support_lower
    if true_family.cdf(true_params, support_start) > 0.0:
        return -math.inf
    lo = max(float(true_family.quantile(true_params, 1e-12)), support_start)
    hi = float(true_family.quantile(true_params, 1.0 - 1e-12))
    mid = float(true_family.quantile(true_params, 0.5))

    def integrand(x):
        return model_family.log_pdf(model_params, x - c) * true_family.pdf(true_params, x)

    left = quad(integrand, lo, mid, limit=300)[0]
    right = quad(integrand, mid, hi, limit=300)[0]
    return left + right
