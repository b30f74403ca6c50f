"""Derivative-free maximizer used by every fit.

Nelder-Mead runs on an unconstrained transform of the parameters so the
simplex can never leave the feasible region: positive parameters through
log, (0, 1) parameters through logit, doubly-bounded intervals through a
scaled logit, unbounded ones untouched.  Convergence is declared when the
simplex infinity-norm diameter drops below ``x_abs_tol`` or the spread of
simplex function values drops below ``f_rel_tol`` relative to the best
value, whichever happens first within ``max_iterations``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "OptimizerSettings",
    "OptimizeResult",
    "Transform",
    "IdentityTransform",
    "LogTransform",
    "LogitTransform",
    "BelowCeilingTransform",
    "transform_for",
    "transforms_for_family",
    "optimize",
]


@dataclass(frozen=True)
class OptimizerSettings:
    max_iterations: int = 500
    f_rel_tol: float = 1e-8
    x_abs_tol: float = 1e-8
    penalty_value: float = -1e300

    def __post_init__(self):
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")
        if not (self.f_rel_tol > 0.0 and self.x_abs_tol > 0.0):
            raise DomainError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizeResult:
    params: tuple
    value: float
    converged: bool
    n_evaluations: int
    n_iterations: int


class Transform:
    """Bijection between a parameter's domain and the whole real line."""

    def to_internal(self, x):
        raise NotImplementedError

    def to_domain(self, u):
        raise NotImplementedError


class IdentityTransform(Transform):
    def to_internal(self, x):
        return float(x)

    def to_domain(self, u):
        return float(u)


class LogTransform(Transform):
    """x in (lower, inf) <-> u = log(x - lower)."""

    def __init__(self, lower=0.0):
        self.lower = lower

    def to_internal(self, x):
        return math.log(x - self.lower)

    def to_domain(self, u):
        return self.lower + math.exp(min(u, 700.0))


class LogitTransform(Transform):
    """x in (lower, upper) <-> u = logit((x - lower)/(upper - lower))."""

    def __init__(self, lower=0.0, upper=1.0):
        self.lower = lower
        self.width = upper - lower

    def to_internal(self, x):
        z = (x - self.lower) / self.width
        return math.log(z) - math.log1p(-z)

    def to_domain(self, u):
        if u >= 0.0:
            z = 1.0 / (1.0 + math.exp(-u))
        else:
            e = math.exp(u)
            z = e / (1.0 + e)
        # keep strictly inside the open interval
        z = min(max(z, 5e-324), np.nextafter(1.0, 0.0))
        return self.lower + self.width * z


class BelowCeilingTransform(Transform):
    """x in (-inf, ceiling) <-> u = log(ceiling - x); used for the location c."""

    def __init__(self, ceiling):
        self.ceiling = ceiling

    def to_internal(self, x):
        return math.log(self.ceiling - x)

    def to_domain(self, u):
        return self.ceiling - math.exp(min(u, 700.0))


def transform_for(interval):
    lo, hi = interval.lower, interval.upper
    if math.isfinite(lo) and math.isfinite(hi):
        return LogitTransform(lo, hi)
    if math.isfinite(lo):
        return LogTransform(lo)
    if math.isfinite(hi):
        return BelowCeilingTransform(hi)
    return IdentityTransform()


def transforms_for_family(family):
    return tuple(transform_for(dom) for dom in family.param_domains)


# deliberately non-round step factors so the simplex lattice cannot align
# with an optimum and produce spurious f-value ties
_NONZERO_STEP = 1.0 + 0.0524077268970
_ZERO_STEP = 2.6180339887e-4


def _initial_simplex(u0):
    sim = [np.array(u0, dtype=float)]
    for i in range(len(u0)):
        vertex = np.array(u0, dtype=float)
        vertex[i] = vertex[i] * _NONZERO_STEP if vertex[i] != 0.0 else _ZERO_STEP
        sim.append(vertex)
    return sim


def optimize(objective, init, settings=None, transforms=None):
    """Maximize ``objective`` over its parameter domain starting from ``init``.

    ``objective`` receives parameters in their natural domain; ``transforms``
    (one per coordinate, identity when omitted) map them to the internal
    unconstrained space the simplex moves in.  Deterministic: identical
    inputs yield identical results.
    """
    settings = settings or OptimizerSettings()
    dim = len(init)
    if transforms is None:
        transforms = tuple(IdentityTransform() for _ in range(dim))
    if len(transforms) != dim:
        raise DomainError("one transform per coordinate is required")

    n_eval = 0

    def f_internal(u):
        nonlocal n_eval
        n_eval += 1
        x = tuple(t.to_domain(v) for t, v in zip(transforms, u))
        value = objective(x)
        if value is None or math.isnan(value):
            return -math.inf
        return float(value)

    u0 = np.array([t.to_internal(x) for t, x in zip(transforms, init)], dtype=float)
    f0 = f_internal(u0)
    if not math.isfinite(f0):
        return OptimizeResult(tuple(init), f0, False, n_eval, 0)

    sim = _initial_simplex(u0)
    fvals = [f0] + [f_internal(v) for v in sim[1:]]

    alpha, gamma, rho, sigma = 1.0, 2.0, 0.5, 0.5
    converged = False
    iteration = 0

    def order():
        idx = sorted(range(len(sim)), key=lambda i: -fvals[i])
        return [sim[i] for i in idx], [fvals[i] for i in idx]

    sim, fvals = order()

    while iteration < settings.max_iterations:
        diameter = max(float(np.max(np.abs(v - sim[0]))) for v in sim[1:]) if dim else 0.0
        f_best, f_worst = fvals[0], fvals[-1]
        spread = f_best - f_worst
        # an exactly flat simplex is a tie or penalty plateau, not convergence;
        # the diameter criterion handles those once the simplex has collapsed
        if diameter < settings.x_abs_tol or (
            math.isfinite(spread)
            and 0.0 < spread <= settings.f_rel_tol * (abs(f_best) + settings.f_rel_tol)
        ):
            converged = True
            break
        iteration += 1

        centroid = np.mean(sim[:-1], axis=0)
        reflected = centroid + alpha * (centroid - sim[-1])
        f_ref = f_internal(reflected)
        if f_ref > fvals[0]:
            expanded = centroid + gamma * (reflected - centroid)
            f_exp = f_internal(expanded)
            if f_exp > f_ref:
                sim[-1], fvals[-1] = expanded, f_exp
            else:
                sim[-1], fvals[-1] = reflected, f_ref
        elif f_ref > fvals[-2]:
            sim[-1], fvals[-1] = reflected, f_ref
        else:
            if f_ref > fvals[-1]:
                contracted = centroid + rho * (reflected - centroid)
                f_con = f_internal(contracted)
                accept = f_con >= f_ref
            else:
                contracted = centroid + rho * (sim[-1] - centroid)
                f_con = f_internal(contracted)
                accept = f_con > fvals[-1]
            if accept:
                sim[-1], fvals[-1] = contracted, f_con
            else:
                best = sim[0]
                for i in range(1, len(sim)):
                    sim[i] = best + sigma * (sim[i] - best)
                    fvals[i] = f_internal(sim[i])
        sim, fvals = order()

    best_params = tuple(t.to_domain(v) for t, v in zip(transforms, sim[0]))
    return OptimizeResult(best_params, fvals[0], converged, n_eval, iteration)
