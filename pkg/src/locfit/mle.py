"""Maximum likelihood fitting over initial-parameter grids.

Seven inference methods share one grid engine:

    standard   fit the family on the raw sample
    inferC     add the location c as an extra optimized parameter,
               reparameterized c = min - exp(u) so c < min always holds
    c1..c4     estimate c first (location module), subtract it, fit as usual
    iteratedC  re-center inside the density: each objective evaluation shifts
               the sample so its minimum sits at the model-implied quantile
               of the sample minimum, F_min^-1(q) = F^-1(1 - (1-q)^(1/n))

Grid starts are independent pure evaluations and the merge is deterministic
(ties on log-likelihood broken by the lowest grid index), so outcomes do not
depend on evaluation order.
"""

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import location
from .errors import ContractError, FitFailedError, LocfitError
from .optimize import (
    BelowCeilingTransform,
    OptimizerSettings,
    optimize,
    transforms_for_family,
)

__all__ = [
    "OptimizerSettings",
    "FitOutcome",
    "GridFit",
    "METHOD_NAMES",
    "log_likelihood",
    "fit_standard",
    "fit_infer_c",
    "fit_with_estimator",
    "fit_iterated_c",
    "fit",
]

METHOD_NAMES = ("standard", "inferC", "c1", "c2", "c3", "c4", "iteratedC")


@dataclass(frozen=True)
class FitOutcome:
    """One MLE result (a single grid start, or the best over a grid)."""

    family: str
    method: str
    params: tuple
    c_hat: Optional[float]
    loglik: float
    converged: bool
    n_evaluations: int
    elapsed_ns: int
    init_point: tuple

    @property
    def neg2l(self):
        return -2.0 * self.loglik


@dataclass(frozen=True)
class GridFit:
    """Best outcome over a grid plus every per-start outcome for the bench module.

    ``branch`` records whether the best was taken over converged starts
    ("converged") or, when none converged, over all usable starts
    ("fallback-all").
    """

    best: FitOutcome
    starts: tuple
    branch: str


def log_likelihood(family, params, sample, penalty_value=-1e300):
    """Sum of log densities; ``penalty_value`` stands in when any term is non-finite."""
    values = np.asarray(sample, dtype=float)
    if values.size == 0:
        raise ContractError("log_likelihood requires a non-empty sample")
    terms = family.log_pdf(params, values)
    if not np.all(np.isfinite(terms)):
        return penalty_value
    return float(np.sum(terms))


def _run_grid(family, method, grid, objective, transforms, settings, c_of_params):
    if not grid:
        raise ContractError("empty initial-parameter grid")
    starts = []
    for init in grid:
        t0 = time.perf_counter_ns()
        res = optimize(objective, init, settings, transforms)
        elapsed = time.perf_counter_ns() - t0
        usable = math.isfinite(res.value) and res.value > settings.penalty_value
        starts.append(
            FitOutcome(
                family=family.name,
                method=method,
                params=c_of_params(res.params)[0],
                c_hat=c_of_params(res.params)[1],
                loglik=res.value,
                converged=bool(res.converged and usable),
                n_evaluations=res.n_evaluations,
                elapsed_ns=int(elapsed),
                init_point=tuple(float(v) for v in init),
            )
        )
    usable_idx = [
        i
        for i, o in enumerate(starts)
        if math.isfinite(o.loglik) and o.loglik > settings.penalty_value
    ]
    if not usable_idx:
        raise FitFailedError(
            f"{family.name}/{method}: no grid start produced a usable likelihood",
            diagnostics={
                "family": family.name,
                "method": method,
                "n_starts": len(starts),
                "logliks": [o.loglik for o in starts],
            },
        )
    converged_idx = [i for i in usable_idx if starts[i].converged]
    pool = converged_idx if converged_idx else usable_idx
    branch = "converged" if converged_idx else "fallback-all"
    best_i = pool[0]
    for i in pool[1:]:
        if starts[i].loglik > starts[best_i].loglik:
            best_i = i
    return GridFit(best=starts[best_i], starts=tuple(starts), branch=branch)


def fit_standard(family, sample, grid=None, settings=None):
    """Best fit of the family on the raw sample over all grid starts."""
    settings = settings or OptimizerSettings()
    data = np.asarray(sample, dtype=float)
    if grid is None:
        grid = family.make_grid(data)
    transforms = transforms_for_family(family)

    def objective(params):
        return log_likelihood(family, params, data, settings.penalty_value)

    return _run_grid(
        family, "standard", grid, objective, transforms, settings, lambda p: (p, None)
    )


def _shifted_scale_sample(sample):
    # proxy for the scale the family will actually see once the location is
    # handled: the sample shifted by the c2 pre-estimate
    est = location.estimate_c2(sample)
    return np.asarray(sample, dtype=float) - est.c_hat, est.c_hat


def fit_infer_c(family, sample, grid=None, settings=None):
    """Joint MLE over (theta, c) with c = min - exp(u) keeping c < min strictly."""
    settings = settings or OptimizerSettings()
    data = np.asarray(sample, dtype=float)
    m = float(data.min())

    shifted, c2 = _shifted_scale_sample(data)
    candidates = [0.5 * m, 0.9 * m, c2]
    if m > 0.0:
        candidates = [max(c, 0.0) for c in candidates]
    c_starts = []
    for c in candidates:
        if c < m and c not in c_starts:
            c_starts.append(c)
    if not c_starts:
        raise FitFailedError(
            f"{family.name}/inferC: no admissible location start below the "
            f"sample minimum {m!r} (degenerate sample)",
            diagnostics={"sample_min": m, "candidates": candidates},
        )

    if grid is None:
        grid = family.make_grid(shifted)
    joint_grid = [tuple(theta) + (c,) for theta in grid for c in c_starts]
    transforms = transforms_for_family(family) + (BelowCeilingTransform(m),)

    def objective(joint):
        theta, c = joint[:-1], joint[-1]
        return log_likelihood(family, theta, data - c, settings.penalty_value)

    return _run_grid(
        family,
        "inferC",
        joint_grid,
        objective,
        transforms,
        settings,
        lambda p: (tuple(p[:-1]), float(p[-1])),
    )


def fit_with_estimator(family, sample, estimator_method, config=None, grid=None, settings=None):
    """Estimate c, subtract it, then fit the family on the shifted sample."""
    settings = settings or OptimizerSettings()
    est = location.estimate(estimator_method, sample, config)
    shifted = location.shift_sample(sample, est.c_hat)
    if grid is None:
        grid = family.make_grid(shifted)
    transforms = transforms_for_family(family)

    def objective(params):
        return log_likelihood(family, params, shifted, settings.penalty_value)

    return _run_grid(
        family,
        estimator_method,
        grid,
        objective,
        transforms,
        settings,
        lambda p: (p, est.c_hat),
    )


def fit_iterated_c(family, sample, grid=None, settings=None, q_min=0.5):
    """MLE over theta only; the shift is implied by the minimum's quantile.

    Each objective evaluation centers the sample so its minimum coincides
    with F_min^-1(q_min | theta); the implied location m - F_min^-1(q_min)
    is reported as c_hat without charging an extra parameter.
    """
    settings = settings or OptimizerSettings()
    data = np.asarray(sample, dtype=float)
    n = data.size
    m = float(data.min())
    if not 0.0 < q_min < 1.0:
        raise ContractError(f"q_min must lie in (0, 1), got {q_min!r}")
    # quantile level of the minimum: 1 - (1 - q)^(1/n)
    inner_q = float(-np.expm1(np.log1p(-q_min) / n))

    def offset_for(theta):
        off = float(family.quantile(theta, inner_q))
        if not math.isfinite(off):
            raise LocfitError("non-finite minimum-quantile offset")
        return off

    def objective(theta):
        try:
            off = offset_for(theta)
        except (LocfitError, FloatingPointError, OverflowError):
            return settings.penalty_value
        return log_likelihood(family, theta, data - m + off, settings.penalty_value)

    if grid is None:
        try:
            shifted, _ = _shifted_scale_sample(data)
        except LocfitError:
            shifted = data - m
        grid = family.make_grid(shifted)
    def implied_c(params):
        # c_hat = min - F_min^-1(q_min | theta); may fail at pathological theta
        try:
            return m - offset_for(params)
        except (LocfitError, FloatingPointError, OverflowError):
            return None

    transforms = transforms_for_family(family)
    gridfit = _run_grid(
        family, "iteratedC", grid, objective, transforms, settings, lambda p: (p, implied_c(p))
    )
    return gridfit


def fit(method, family, sample, config=None, grid=None, settings=None):
    """Dispatch one of the seven registered inference methods by name."""
    if method == "standard":
        return fit_standard(family, sample, grid=grid, settings=settings)
    if method == "inferC":
        return fit_infer_c(family, sample, grid=grid, settings=settings)
    if method in location.ESTIMATOR_NAMES:
        return fit_with_estimator(
            family, sample, method, config=config, grid=grid, settings=settings
        )
    if method == "iteratedC":
        q = config.q_min if config is not None else 0.5
        return fit_iterated_c(family, sample, grid=grid, settings=settings, q_min=q)
    raise ContractError(
        f"unknown method {method!r}; valid names: {', '.join(METHOD_NAMES)}"
    )
