"""locfit: fit positive-support distributions to samples whose populational
minimum is large and unknown.

Seven inference methods (standard, inferC, c1..c4, iteratedC) over nine
distribution families, with model-selection metrics, cross-validation,
timing benchmarks and a measurement harness.  See the README for the CLI.
"""

from .bench import TimingAggregate, aggregate_timings, bootstrap_ci
from .distributions import (
    FAMILIES,
    FAMILY_NAMES,
    FamilyDescriptor,
    Interval,
    beta_family,
    compose_cdf,
    fix_params,
    get_family,
    sample_stats,
    shift_by,
    truncate_at,
    uniform01_family,
)
from .errors import (
    ContractError,
    CrossValidationError,
    DegenerateTruncationError,
    DomainError,
    FitFailedError,
    LocfitError,
    MeasurementError,
    SampleFormatError,
    SampleTooSmallError,
    UndefinedCVError,
    ZeroDispersionWarning,
    ZeroMinimumWarning,
)
from .ingest import (
    HalvesReport,
    Sample,
    measure_command,
    read_sample,
    split_halves_check,
    synth_sample,
    write_sample,
)
from .location import (
    ESTIMATOR_NAMES,
    EstimatorConfig,
    LocationEstimate,
    coefficient_of_variation,
    estimate,
    estimate_c1,
    estimate_c2,
    estimate_c3,
    estimate_c4,
    min_cdf,
    min_quantile,
    shift_sample,
)
from .mle import (
    METHOD_NAMES,
    FitOutcome,
    GridFit,
    OptimizerSettings,
    fit,
    fit_infer_c,
    fit_iterated_c,
    fit_standard,
    fit_with_estimator,
    log_likelihood,
)
from .optimize import OptimizeResult, optimize
from .selection import (
    METRIC_NAMES,
    ComparisonReport,
    FitRow,
    MetricSet,
    cross_validated_neg2l,
    cv_folds,
    expected_log_likelihood,
    metric_value,
    metrics,
    parameter_count,
    quality_deltas,
    win_counts,
)
from .special import gamma_fn, inc_gamma_ratio

__version__ = "0.1.0"
