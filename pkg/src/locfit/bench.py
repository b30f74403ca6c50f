"""Timing aggregation and bootstrap confidence intervals.

Per-start optimization times are pooled per (family, method); means are
reported over all starts and over the converged subset, each with a
percentile-bootstrap confidence interval of the mean.  Durations stay in
integer nanoseconds until report time.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ContractError, DomainError

__all__ = ["TimingAggregate", "aggregate_timings", "bootstrap_ci"]


@dataclass(frozen=True)
class TimingAggregate:
    family: str
    method: str
    n_starts: int
    n_converged: int
    mean_all_ns: float
    mean_conv_ns: Optional[float]
    ci_all_ns: tuple
    ci_conv_ns: Optional[tuple]


def bootstrap_ci(values, level=0.95, resamples=1000, seed=0):
    """Percentile bootstrap interval for the mean; deterministic given the seed."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ContractError("bootstrap_ci requires at least one value")
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, v.size, size=(int(resamples), v.size))
    means = v[idx].mean(axis=1)
    tail = (1.0 - level) / 2.0
    low, high = np.quantile(means, [tail, 1.0 - tail])
    return float(low), float(high)


def aggregate_timings(outcomes, level=0.95, resamples=1000, seed=0):
    """Mean per-start optimization times (all and converged-only) with CIs."""
    outcomes = list(outcomes)
    if not outcomes:
        raise ContractError("aggregate_timings requires at least one outcome")
    all_ns = [int(o.elapsed_ns) for o in outcomes]
    conv_ns = [int(o.elapsed_ns) for o in outcomes if o.converged]
    mean_all = sum(all_ns) / len(all_ns)
    ci_all = bootstrap_ci(all_ns, level=level, resamples=resamples, seed=seed)
    if conv_ns:
        mean_conv = sum(conv_ns) / len(conv_ns)
        ci_conv = bootstrap_ci(conv_ns, level=level, resamples=resamples, seed=seed)
    else:
        mean_conv, ci_conv = None, None
    return TimingAggregate(
        family=outcomes[0].family,
        method=outcomes[0].method,
        n_starts=len(all_ns),
        n_converged=len(conv_ns),
        mean_all_ns=mean_all,
        mean_conv_ns=mean_conv,
        ci_all_ns=ci_all,
        ci_conv_ns=ci_conv,
    )
