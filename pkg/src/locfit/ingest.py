"""Sample acquisition: measuring commands, sample files, synthetic data.

Sample file format: UTF-8 text, one decimal number per line; lines starting
with ``#`` are comments, and ``# key: value`` comments are captured as
metadata.  The format round-trips exactly for values written by this module.
"""

import math
import os
import pathlib
import subprocess
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, MeasurementError, SampleFormatError, SampleTooSmallError

__all__ = [
    "Sample",
    "HalfSummary",
    "HalvesReport",
    "measure_command",
    "split_halves_check",
    "read_sample",
    "write_sample",
    "synth_sample",
]

_DECILES = tuple(i / 10.0 for i in range(1, 10))


@dataclass(frozen=True)
class Sample:
    """An ordered sample plus where it came from.

    values are seconds for measured data and unitless for synthetic data.
    """

    values: np.ndarray
    label: str
    provenance: str  # measured | file | synthetic
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.size == 0:
            raise ContractError("a sample must contain at least one value")
        if not np.all(np.isfinite(v)):
            raise ContractError("sample values must all be finite")
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return int(self.values.size)


def measure_command(command, runs, warmup=0, label=None, child_seed=None):
    """Run ``command`` through the shell ``runs`` times, timing each child.

    ``warmup`` extra runs execute first and are discarded.  Wall-clock
    (monotonic) child duration is recorded in seconds, spawn to exit; runs
    are strictly sequential so children never compete with each other.  A
    nonzero exit status or unlaunchable command aborts with a
    :class:`MeasurementError` naming the run.  When ``child_seed`` is given
    it is exported to children as ``LOCFIT_CHILD_SEED`` (off by default; use
    it when the measured program draws random numbers that could change its
    execution path).
    """
    if not command:
        raise ContractError("measure_command requires a non-empty command")
    if runs < 1:
        raise ContractError(f"runs must be >= 1, got {runs}")
    env = None
    if child_seed is not None:
        env = dict(os.environ, LOCFIT_CHILD_SEED=str(child_seed))

    def run_once(index, is_warmup):
        t0 = time.perf_counter_ns()
        try:
            proc = subprocess.run(
                command,
                shell=True,
                stdout=subprocess.DEVNULL,
                stderr=subprocess.DEVNULL,
                env=env,
            )
        except OSError as exc:
            raise MeasurementError(
                f"run {index}{' (warmup)' if is_warmup else ''} failed to start: {exc}",
                run_index=index,
            ) from exc
        elapsed_ns = time.perf_counter_ns() - t0
        if proc.returncode != 0:
            raise MeasurementError(
                f"run {index}{' (warmup)' if is_warmup else ''} exited with "
                f"status {proc.returncode}",
                run_index=index,
            )
        return elapsed_ns / 1e9

    for i in range(warmup):
        run_once(i, True)
    values = [run_once(i, False) for i in range(runs)]
    return Sample(
        values=np.asarray(values),
        label=label or "measured",
        provenance="measured",
        metadata={"command": command, "runs": str(runs), "warmup": str(warmup)},
    )


@dataclass(frozen=True)
class HalfSummary:
    mean: float
    std: float
    deciles: tuple


@dataclass(frozen=True)
class HalvesReport:
    """First-half vs second-half summaries for eyeballing non-stationarity.

    No automatic verdict is attached: the sup-distance between the halves'
    empirical cdfs and the summary rows are for the experimenter to judge.
    """

    first: HalfSummary
    second: HalfSummary
    sup_distance: float


def _summarize(values):
    return HalfSummary(
        mean=float(values.mean()),
        std=float(values.std(ddof=1)),
        deciles=tuple(float(q) for q in np.quantile(values, _DECILES)),
    )


def _ecdf_sup_distance(a, b):
    a_sorted, b_sorted = np.sort(a), np.sort(b)
    grid = np.concatenate([a_sorted, b_sorted])
    fa = np.searchsorted(a_sorted, grid, side="right") / a_sorted.size
    fb = np.searchsorted(b_sorted, grid, side="right") / b_sorted.size
    return float(np.max(np.abs(fa - fb)))


def split_halves_check(sample):
    """Summaries of the sample's two halves plus their ecdf sup-distance."""
    values = sample.values if isinstance(sample, Sample) else np.asarray(sample, float)
    if values.size < 20:
        raise SampleTooSmallError(
            f"split_halves_check needs n >= 20, got {values.size}"
        )
    half = values.size // 2
    first, second = values[:half], values[half:]
    return HalvesReport(
        first=_summarize(first),
        second=_summarize(second),
        sup_distance=_ecdf_sup_distance(first, second),
    )


def read_sample(path):
    """Parse a sample file; malformed lines are reported with their line number."""
    values = []
    metadata = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, _, val = body.partition(":")
                    if key.strip():
                        metadata[key.strip()] = val.strip()
                continue
            try:
                value = float(line)
            except ValueError:
                raise SampleFormatError(
                    f"{path}: line {lineno}: not a number: {line!r}", line=lineno
                ) from None
            if not math.isfinite(value):
                raise SampleFormatError(
                    f"{path}: line {lineno}: non-finite value {line!r}", line=lineno
                )
            values.append(value)
    if not values:
        raise SampleFormatError(f"{path}: no sample values found")
    return Sample(
        values=np.asarray(values),
        label=pathlib.Path(path).stem,
        provenance="file",
        metadata=metadata,
    )


def write_sample(sample, path):
    """Write the sample file format; repr round-trips every float exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in sample.metadata.items():
            fh.write(f"# {key}: {value}\n")
        for value in sample.values:
            fh.write(f"{float(value)!r}\n")


def synth_sample(family, params, c, n, seed, label=None):
    """Draw n variates from the family and shift them by +c (ground truth c)."""
    values = family.draw(params, n, seed) + c
    return Sample(
        values=values,
        label=label or f"synth_{family.name}",
        provenance="synthetic",
        metadata={
            "family": family.name,
            "params": ",".join(repr(float(p)) for p in params),
            "c": repr(float(c)),
            "n": str(n),
            "seed": str(seed),
        },
    )
