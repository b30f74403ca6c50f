"""Command-line front end: measure, synth, fit, compare.

Exit codes: 0 success, 1 usage/validation error, 2 all cells (or the
measurement) failed, 3 I/O or input-file error.  All subcommands are
deterministic given their flags; every random choice is driven by --seed.
``LOCFIT_THREADS`` caps how many fit cells run concurrently in ``compare``.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import bench, ingest, selection
from . import mle
from .distributions import FAMILY_NAMES, get_family
from .errors import LocfitError, MeasurementError, SampleFormatError
from .location import EstimatorConfig
from .mle import METHOD_NAMES, OptimizerSettings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ALL_FAILED = 2
EXIT_IO = 3

DELTA_METRICS = ("neg2l", "aic", "caic", "hqic", "bic")


class CliError(Exception):
    def __init__(self, message, exit_code=EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through CliError instead
    def error(self, message):
        raise CliError(f"{self.prog}: {message}")


def _add_common_flags(p):
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    p.add_argument("--k-base", type=float, default=10.0, help="log base of the c1 estimator")
    p.add_argument("--nu", type=float, default=0.05, help="confidence tail of the c4 estimator")
    p.add_argument("--q-min", type=float, default=0.5, help="minimum quantile used by iteratedC")
    p.add_argument("--max-iterations", type=int, default=500)
    p.add_argument("--f-rel-tol", type=float, default=1e-8)
    p.add_argument("--x-abs-tol", type=float, default=1e-8)


def build_parser():
    parser = _Parser(prog="locfit", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    m = sub.add_parser("measure", help="time a command and write a sample file")
    m.add_argument("--cmd", required=True, help="shell command to measure")
    m.add_argument("--runs", type=int, required=True)
    m.add_argument("--warmup", type=int, default=0)
    m.add_argument("--out", required=True)
    m.add_argument("--label", default=None)
    m.add_argument(
        "--child-seed",
        type=int,
        default=None,
        help="export LOCFIT_CHILD_SEED to the measured child processes (default: off)",
    )

    s = sub.add_parser("synth", help="write a synthetic sample file")
    s.add_argument("--family", required=True)
    s.add_argument("--params", required=True, help="comma-separated parameter values")
    s.add_argument("--c", type=float, default=0.0, help="location shift added to the draws")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.add_argument("--label", default=None)

    f = sub.add_parser("fit", help="fit families x methods on one sample")
    f.add_argument("--input", required=True)
    f.add_argument("--families", required=True, help="comma-separated names, or 'all'")
    f.add_argument("--methods", required=True, help="comma-separated names, or 'all'")
    f.add_argument("--folds", type=int, default=None, help="add cross-validated neg2l")
    f.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    _add_common_flags(f)

    c = sub.add_parser("compare", help="full grid over sample sets x families x methods")
    c.add_argument("--inputs", nargs="+", required=True)
    c.add_argument("--families", required=True)
    c.add_argument("--methods", required=True)
    c.add_argument("--folds", type=int, default=None)
    c.add_argument("--out", required=True, help="output prefix for the JSON and CSV files")
    c.add_argument(
        "--per-family",
        action="store_true",
        help="win-count contests per method over families instead of over methods",
    )
    _add_common_flags(c)
    return parser


def _expand_names(raw, registry, what):
    names = list(registry) if raw.strip() == "all" else [s.strip() for s in raw.split(",") if s.strip()]
    if not names:
        raise CliError(f"no {what} selected")
    for name in names:
        if name not in registry:
            raise CliError(
                f"unknown {what} {name!r}; valid names: {', '.join(registry)}"
            )
    return names


def _configs(args):
    try:
        config = EstimatorConfig(k_base=args.k_base, nu=args.nu, q_min=args.q_min)
        settings = OptimizerSettings(
            max_iterations=args.max_iterations,
            f_rel_tol=args.f_rel_tol,
            x_abs_tol=args.x_abs_tol,
        )
    except LocfitError as exc:
        raise CliError(str(exc)) from exc
    return config, settings


def _read_samples(paths):
    samples = []
    labels = {}
    for path in paths:
        try:
            sample = ingest.read_sample(path)
        except SampleFormatError as exc:
            raise CliError(str(exc), exit_code=EXIT_IO) from exc
        except OSError as exc:
            raise CliError(str(exc), exit_code=EXIT_IO) from exc
        label = sample.label
        if label in labels:
            labels[label] += 1
            label = f"{label}#{labels[sample.label]}"
        else:
            labels[label] = 1
        samples.append((path, label, sample))
    return samples


@dataclass
class _Cell:
    json: dict
    metrics: Optional[selection.MetricSet]
    gridfit: Optional[mle.GridFit]


def _run_cell(label, values, family_name, method, config, settings, folds, seed):
    base = {"sample_set": label, "family": family_name, "method": method}
    family = get_family(family_name)
    try:
        gridfit = mle.fit(method, family, values, config=config, settings=settings)
    except LocfitError as exc:
        return _Cell(json={**base, "ok": False, "error": str(exc)}, metrics=None, gridfit=None)
    cv = None
    cv_error = None
    if folds:
        try:
            cv = selection.cross_validated_neg2l(
                family, method, values, folds=folds, seed=seed, config=config, settings=settings
            )
        except LocfitError as exc:
            cv_error = str(exc)
    try:
        mset = selection.metrics(gridfit.best, len(values), cv_neg2l=cv)
    except LocfitError as exc:
        return _Cell(json={**base, "ok": False, "error": str(exc)}, metrics=None, gridfit=gridfit)
    best = gridfit.best
    cell = {
        **base,
        "ok": True,
        "params": [float(v) for v in best.params],
        "c_hat": None if best.c_hat is None else float(best.c_hat),
        "loglik": best.loglik,
        "converged": best.converged,
        "branch": gridfit.branch,
        "n_evaluations": best.n_evaluations,
        "elapsed_ns": best.elapsed_ns,
        "init_point": [float(v) for v in best.init_point],
        "metrics": {
            "neg2l": mset.neg2l,
            "aic": mset.aic,
            "caic": mset.caic,
            "hqic": mset.hqic,
            "bic": mset.bic,
            "cv_neg2l": mset.cv_neg2l,
            "k": mset.k,
            "n": mset.n,
        },
    }
    if cv_error:
        cell["cv_error"] = cv_error
    return _Cell(json=cell, metrics=mset, gridfit=gridfit)


def _run_cells(tasks):
    cap = os.environ.get("LOCFIT_THREADS")
    try:
        workers = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        workers = 1
    workers = max(1, min(workers, len(tasks)))
    if workers == 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [f.result() for f in futures]


def _active_metrics(folds):
    return DELTA_METRICS + (("cv_neg2l",) if folds else ())


def _marginalized_rows(cells, metric):
    """Per (sample set, method): the best family's row under the metric."""
    best = {}
    for cell in cells:
        if cell.metrics is None:
            continue
        value = getattr(cell.metrics, metric)
        if value is None:
            continue
        key = (cell.json["sample_set"], cell.json["method"])
        current = best.get(key)
        if current is None or value < getattr(current.metrics, metric):
            best[key] = cell
    return [
        selection.FitRow(
            sample_set=key[0],
            family=cell.json["family"],
            method=key[1],
            metrics=cell.metrics,
        )
        for key, cell in sorted(best.items())
    ]


def _all_rows(cells):
    return [
        selection.FitRow(
            sample_set=c.json["sample_set"],
            family=c.json["family"],
            method=c.json["method"],
            metrics=c.metrics,
        )
        for c in cells
        if c.metrics is not None
    ]


def _wins_json(counts):
    return [
        {"family": fam, "method": meth, "count": count}
        for (fam, meth), count in sorted(counts.items())
    ]


def _assemble_compare(samples, cells, families, methods, folds, seed, per_family, config_json):
    deltas = {}
    best_family = {}
    wins = {}
    seconds = {}
    for metric in _active_metrics(folds):
        rows = _marginalized_rows(cells, metric)
        metric_deltas = selection.quality_deltas(rows, metric)
        per_sample = {}
        fam_map = {}
        for (sample_set, family, method), delta in metric_deltas.items():
            per_sample.setdefault(sample_set, {})[method] = delta
            fam_map.setdefault(sample_set, {})[method] = family
        deltas[metric] = per_sample
        best_family[metric] = fam_map
        if per_family:
            win_table = {}
            second_table = {}
            for method in methods:
                method_rows = [r for r in _all_rows(cells) if r.method == method]
                for key, cnt in selection.win_counts(method_rows, metric, place=1).items():
                    win_table[key] = win_table.get(key, 0) + cnt
                for key, cnt in selection.win_counts(method_rows, metric, place=2).items():
                    second_table[key] = second_table.get(key, 0) + cnt
            wins[metric] = _wins_json(win_table)
            seconds[metric] = _wins_json(second_table)
        else:
            wins[metric] = _wins_json(selection.win_counts(rows, metric, place=1))
            seconds[metric] = _wins_json(selection.win_counts(rows, metric, place=2))

    starts_by_pair = {}
    for cell in cells:
        if cell.gridfit is None:
            continue
        key = (cell.json["family"], cell.json["method"])
        starts_by_pair.setdefault(key, []).extend(cell.gridfit.starts)
    timings = []
    for (family, method) in sorted(starts_by_pair):
        agg = bench.aggregate_timings(starts_by_pair[(family, method)], seed=seed)
        timings.append(
            {
                "family": agg.family,
                "method": agg.method,
                "n_starts": agg.n_starts,
                "n_converged": agg.n_converged,
                "mean_all_ns": agg.mean_all_ns,
                "mean_conv_ns": agg.mean_conv_ns,
                "ci_all_lo_ns": agg.ci_all_ns[0],
                "ci_all_hi_ns": agg.ci_all_ns[1],
                "ci_conv_lo_ns": None if agg.ci_conv_ns is None else agg.ci_conv_ns[0],
                "ci_conv_hi_ns": None if agg.ci_conv_ns is None else agg.ci_conv_ns[1],
            }
        )

    return {
        "schema": 1,
        "kind": "compare",
        "inputs": [
            {"path": str(path), "label": label, "n": sample.n}
            for path, label, sample in samples
        ],
        "config": config_json,
        "cells": [c.json for c in cells],
        "deltas": deltas,
        "best_family": best_family,
        "win_counts": wins,
        "second_place_counts": seconds,
        "timings": timings,
    }


# ---------------------------------------------------------------------------
# CSV rendering (pure functions of the JSON report, so CSVs can be
# regenerated exactly from a re-read report)

_ROW_COLUMNS = (
    "sample_set,family,method,ok,converged,branch,k,n,loglik,neg2l,aic,caic,"
    "hqic,bic,cv_neg2l,c_hat,n_evaluations,elapsed_ns,params,init_point,error"
).split(",")


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_rows_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_ROW_COLUMNS)
    for cell in report["cells"]:
        metrics = cell.get("metrics", {})
        writer.writerow(
            [
                cell["sample_set"],
                cell["family"],
                cell["method"],
                _fmt(cell["ok"]),
                _fmt(cell.get("converged")),
                cell.get("branch", ""),
                _fmt(metrics.get("k")),
                _fmt(metrics.get("n")),
                _fmt(cell.get("loglik")),
                _fmt(metrics.get("neg2l")),
                _fmt(metrics.get("aic")),
                _fmt(metrics.get("caic")),
                _fmt(metrics.get("hqic")),
                _fmt(metrics.get("bic")),
                _fmt(metrics.get("cv_neg2l")),
                _fmt(cell.get("c_hat")),
                _fmt(cell.get("n_evaluations")),
                _fmt(cell.get("elapsed_ns")),
                ";".join(_fmt(v) for v in cell.get("params", [])),
                ";".join(_fmt(v) for v in cell.get("init_point", [])),
                cell.get("error", ""),
            ]
        )
    return buf.getvalue()


def render_deltas_csv(report):
    """Boxplot-ready wide table: one delta column per method."""
    methods = report["config"]["methods"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "sample_set"] + list(methods))
    for metric in sorted(report["deltas"]):
        per_sample = report["deltas"][metric]
        for sample_set in sorted(per_sample):
            row = [metric, sample_set]
            row += [_fmt(per_sample[sample_set].get(m)) for m in methods]
            writer.writerow(row)
    return buf.getvalue()


def render_wins_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "place", "family", "method", "count"])
    for place, key in ((1, "win_counts"), (2, "second_place_counts")):
        table = report[key]
        for metric in sorted(table):
            for entry in table[metric]:
                writer.writerow(
                    [metric, place, entry["family"], entry["method"], entry["count"]]
                )
    return buf.getvalue()


_TIMING_COLUMNS = (
    "family,method,n_starts,n_converged,mean_all_ns,mean_conv_ns,"
    "ci_all_lo_ns,ci_all_hi_ns,ci_conv_lo_ns,ci_conv_hi_ns"
).split(",")


def render_timings_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_TIMING_COLUMNS)
    for entry in report["timings"]:
        writer.writerow([_fmt(entry[col]) for col in _TIMING_COLUMNS])
    return buf.getvalue()


def render_csvs(report):
    return {
        "rows": render_rows_csv(report),
        "deltas": render_deltas_csv(report),
        "wins": render_wins_csv(report),
        "timings": render_timings_csv(report),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_measure(args):
    if args.runs < 1:
        raise CliError(f"--runs must be >= 1, got {args.runs}")
    if args.warmup < 0:
        raise CliError(f"--warmup must be >= 0, got {args.warmup}")
    try:
        sample = ingest.measure_command(
            args.cmd, args.runs, warmup=args.warmup, label=args.label, child_seed=args.child_seed
        )
    except MeasurementError as exc:
        print(f"locfit measure: {exc}", file=sys.stderr)
        return EXIT_ALL_FAILED
    try:
        ingest.write_sample(sample, args.out)
    except OSError as exc:
        print(f"locfit measure: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {sample.n} measurements to {args.out}")
    return EXIT_OK


def cmd_synth(args):
    family = _family_or_usage(args.family)
    params = _parse_params(family, args.params)
    if args.n < 1:
        raise CliError(f"--n must be >= 1, got {args.n}")
    sample = ingest.synth_sample(family, params, args.c, args.n, args.seed, label=args.label)
    try:
        ingest.write_sample(sample, args.out)
    except OSError as exc:
        print(f"locfit synth: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {sample.n} synthetic values to {args.out}")
    return EXIT_OK


def _family_or_usage(name):
    try:
        return get_family(name)
    except LocfitError as exc:
        raise CliError(str(exc)) from exc


def _parse_params(family, raw):
    try:
        values = tuple(float(part) for part in raw.split(","))
    except ValueError:
        raise CliError(f"--params must be comma-separated numbers, got {raw!r}") from None
    try:
        family.check_params(values)
    except LocfitError as exc:
        raise CliError(str(exc)) from exc
    return values


def _config_json(args, families, methods, folds, extra=None):
    doc = {
        "families": list(families),
        "methods": list(methods),
        "folds": folds,
        "seed": args.seed,
        "k_base": args.k_base,
        "nu": args.nu,
        "q_min": args.q_min,
        "max_iterations": args.max_iterations,
        "f_rel_tol": args.f_rel_tol,
        "x_abs_tol": args.x_abs_tol,
    }
    if extra:
        doc.update(extra)
    return doc


def cmd_fit(args):
    families = _expand_names(args.families, FAMILY_NAMES, "family")
    methods = _expand_names(args.methods, METHOD_NAMES, "method")
    if args.folds is not None and args.folds < 2:
        raise CliError(f"--folds must be >= 2, got {args.folds}")
    config, settings = _configs(args)
    samples = _read_samples([args.input])
    _, label, sample = samples[0]

    tasks = [
        (lambda f=f, m=m: _run_cell(label, sample.values, f, m, config, settings, args.folds, args.seed))
        for f in families
        for m in methods
    ]
    cells = _run_cells(tasks)
    doc = {
        "schema": 1,
        "kind": "fit",
        "input": str(args.input),
        "label": label,
        "n": sample.n,
        "config": _config_json(args, families, methods, args.folds),
        "cells": [c.json for c in cells],
    }
    payload = json.dumps(doc, indent=2)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
        except OSError as exc:
            print(f"locfit fit: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        print(payload)
    if not any(c.json["ok"] for c in cells):
        return EXIT_ALL_FAILED
    return EXIT_OK


def cmd_compare(args):
    families = _expand_names(args.families, FAMILY_NAMES, "family")
    methods = _expand_names(args.methods, METHOD_NAMES, "method")
    if args.folds is not None and args.folds < 2:
        raise CliError(f"--folds must be >= 2, got {args.folds}")
    config, settings = _configs(args)
    samples = _read_samples(args.inputs)

    tasks = [
        (
            lambda label=label, values=sample.values, f=f, m=m: _run_cell(
                label, values, f, m, config, settings, args.folds, args.seed
            )
        )
        for _, label, sample in samples
        for f in families
        for m in methods
    ]
    cells = _run_cells(tasks)
    report = _assemble_compare(
        samples,
        cells,
        families,
        methods,
        args.folds,
        args.seed,
        args.per_family,
        _config_json(args, families, methods, args.folds, {"per_family": args.per_family}),
    )
    try:
        with open(f"{args.out}.json", "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")
        for suffix, content in render_csvs(report).items():
            with open(f"{args.out}_{suffix}.csv", "w", encoding="utf-8") as fh:
                fh.write(content)
    except OSError as exc:
        print(f"locfit compare: {exc}", file=sys.stderr)
        return EXIT_IO
    n_ok = sum(1 for c in cells if c.json["ok"])
    print(f"compare: {n_ok}/{len(cells)} cells fitted; wrote {args.out}.json and CSVs")
    if n_ok == 0:
        return EXIT_ALL_FAILED
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "measure": cmd_measure,
            "synth": cmd_synth,
            "fit": cmd_fit,
            "compare": cmd_compare,
        }[args.subcommand]
        return handler(args)
    except CliError as exc:
        print(f"locfit: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
