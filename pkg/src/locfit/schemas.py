"""JSON Schemas for the documents the CLI emits (draft-07)."""

_METRICS = {
    "type": "object",
    "required": ["neg2l", "aic", "caic", "hqic", "bic", "k", "n"],
    "properties": {
        "neg2l": {"type": "number"},
        "aic": {"type": "number"},
        "caic": {"type": "number"},
        "hqic": {"type": "number"},
        "bic": {"type": "number"},
        "cv_neg2l": {"type": ["number", "null"]},
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
    },
}

_CELL = {
    "type": "object",
    "required": ["sample_set", "family", "method", "ok"],
    "properties": {
        "sample_set": {"type": "string"},
        "family": {"type": "string"},
        "method": {"type": "string"},
        "ok": {"type": "boolean"},
        "params": {"type": "array", "items": {"type": "number"}},
        "c_hat": {"type": ["number", "null"]},
        "loglik": {"type": "number"},
        "converged": {"type": "boolean"},
        "branch": {"enum": ["converged", "fallback-all"]},
        "n_evaluations": {"type": "integer"},
        "elapsed_ns": {"type": "integer"},
        "init_point": {"type": "array", "items": {"type": "number"}},
        "metrics": _METRICS,
        "error": {"type": "string"},
    },
}

_TIMING = {
    "type": "object",
    "required": [
        "family",
        "method",
        "n_starts",
        "n_converged",
        "mean_all_ns",
        "mean_conv_ns",
        "ci_all_lo_ns",
        "ci_all_hi_ns",
        "ci_conv_lo_ns",
        "ci_conv_hi_ns",
    ],
    "properties": {
        "family": {"type": "string"},
        "method": {"type": "string"},
        "n_starts": {"type": "integer", "minimum": 1},
        "n_converged": {"type": "integer", "minimum": 0},
        "mean_all_ns": {"type": "number"},
        "mean_conv_ns": {"type": ["number", "null"]},
        "ci_all_lo_ns": {"type": "number"},
        "ci_all_hi_ns": {"type": "number"},
        "ci_conv_lo_ns": {"type": ["number", "null"]},
        "ci_conv_hi_ns": {"type": ["number", "null"]},
    },
}

FIT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "kind", "input", "n", "cells"],
    "properties": {
        "schema": {"const": 1},
        "kind": {"const": "fit"},
        "input": {"type": "string"},
        "label": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "config": {"type": "object"},
        "cells": {"type": "array", "items": _CELL},
    },
}

COMPARE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": [
        "schema",
        "kind",
        "inputs",
        "config",
        "cells",
        "deltas",
        "win_counts",
        "second_place_counts",
        "timings",
    ],
    "properties": {
        "schema": {"const": 1},
        "kind": {"const": "compare"},
        "inputs": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["path", "label", "n"],
                "properties": {
                    "path": {"type": "string"},
                    "label": {"type": "string"},
                    "n": {"type": "integer", "minimum": 1},
                },
            },
        },
        "config": {"type": "object"},
        "cells": {"type": "array", "items": _CELL},
        "deltas": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {
                    "type": "object",
                    "additionalProperties": {"type": "number"},
                },
            },
        },
        "best_family": {"type": "object"},
        "win_counts": {"type": "object"},
        "second_place_counts": {"type": "object"},
        "timings": {"type": "array", "items": _TIMING},
    },
}
