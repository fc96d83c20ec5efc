"""The JSON report: envelope, encoding and schema.

The body depends only on (seed, config, build); wall-clock times are printed
to stderr and never stored.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

SCHEMA_VERSION = "1.0.0"

_STATUS = {"enum": ["pass", "fail", "error"]}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "hypersym report",
    "type": "object",
    "required": ["schema_version", "tool", "version", "command", "config", "status", "results", "warnings", "build"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {"const": "hypersym"},
        "version": {"type": "string"},
        "command": {"enum": ["verify", "groups", "eval", "typos"]},
        "config": {"type": "object"},
        "status": _STATUS,
        "error": {"type": "string"},
        "warnings": {"type": "array", "items": {"type": "string"}},
        "build": {
            "type": "object",
            "required": ["numba"],
            "properties": {"numba": {"type": "boolean"}},
        },
        "results": {"type": "object"},
    },
    "allOf": [
        {
            "if": {"properties": {"command": {"const": "verify"}, "status": {"enum": ["pass", "fail"]}}},
            "then": {"properties": {"results": {
                "type": "object",
                "required": ["identities", "checks", "failures"],
                "properties": {
                    "failures": {"type": "integer", "minimum": 0},
                    "identities": {"type": "array", "items": {
                        "type": "object",
                        "required": ["identity", "family", "samples", "passes", "failures", "status"],
                        "properties": {
                            "identity": {"type": "string"},
                            "samples": {"type": "integer", "minimum": 1},
                            "passes": {"type": "integer", "minimum": 0},
                            "failures": {"type": "integer", "minimum": 0},
                            "status": {"enum": ["pass", "fail"]},
                            "worst_residual": {"type": ["number", "null"]},
                        },
                    }},
                    "checks": {"type": "array", "items": {
                        "type": "object", "required": ["check", "name", "status"]}},
                },
            }}},
        },
        {
            "if": {"properties": {"command": {"const": "groups"}, "status": {"enum": ["pass", "fail"]}}},
            "then": {"properties": {"results": {
                "type": "object",
                "required": ["orders", "relations", "cosets", "translation", "correspondences"],
                "additionalProperties": {"type": "array", "items": {
                    "type": "object", "required": ["name", "expected", "observed", "status"],
                    "properties": {"status": {"enum": ["pass", "fail", "flagged"]}}}},
            }}},
        },
        {
            "if": {"properties": {"command": {"const": "typos"}, "status": {"enum": ["pass", "fail"]}}},
            "then": {"properties": {"results": {
                "type": "object",
                "required": ["ambiguities", "corrections"],
                "additionalProperties": {"type": "array", "items": {
                    "type": "object", "required": ["identity", "status", "candidates", "samples"],
                    "properties": {"status": {"enum": ["UNIQUE", "OPEN", "MISMATCH"]}}}},
            }}},
        },
        {
            "if": {"properties": {"command": {"const": "eval"}, "status": {"const": "pass"}}},
            "then": {"properties": {"results": {
                "type": "object", "required": ["shape", "value", "exact", "error_budget"]}}},
        },
    ],
}


def _plain(obj):
    """Recursively convert to JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def make_report(command: str, config: dict, status: str, results: dict, warnings=(), error=None) -> dict:
    from . import __version__
    from ._jit import USE_NUMBA
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool": "hypersym",
        "version": __version__,
        "command": command,
        "config": config,
        "status": status,
        "results": results,
        "warnings": list(warnings),
        "build": {"numba": bool(USE_NUMBA)},
    }
    if error is not None:
        out["error"] = error
    return _plain(out)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
