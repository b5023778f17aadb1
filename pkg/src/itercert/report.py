"""JSON report layout shared by every CLI command."""

import json
import math

SCHEMA_VERSION = "1.0"

_NUMBER = {"type": ["number", "null"]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "matrix", "certificate", "trace", "timing_ms"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["certify", "solve", "spectrum", "poisson"]},
        "matrix": {
            "type": "object",
            "required": ["n", "source"],
            "properties": {"n": {"type": "integer", "minimum": 1}, "source": {"type": "string"}},
        },
        "certificate": {
            "type": ["object", "null"],
            "required": [
                "verdict",
                "criterion",
                "spectral_radius",
                "eigenvalues",
                "predicted_rate",
                "predicted_iters",
                "notes",
            ],
            "properties": {
                "verdict": {"enum": ["converges", "diverges", "unknown"]},
                "criterion": {"enum": ["spectral_radius", "reich"]},
                "spectral_radius": _NUMBER,
                "eigenvalues": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["re", "im"],
                        "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
                    },
                },
                "predicted_rate": _NUMBER,
                "predicted_iters": {"type": ["integer", "null"], "minimum": 0},
                "notes": {"type": "string"},
            },
        },
        "trace": {
            "type": ["object", "null"],
            "required": [
                "status",
                "iterations",
                "final_update_norm",
                "final_error_norm",
                "observed_rate",
            ],
            "properties": {
                "status": {"enum": ["reached_tol", "max_iters", "diverged"]},
                "iterations": {"type": "integer", "minimum": 0},
                "final_update_norm": _NUMBER,
                "final_error_norm": _NUMBER,
                "observed_rate": _NUMBER,
            },
        },
        "timing_ms": {"type": "number", "minimum": 0},
    },
}


def finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def trace_summary(trace, rate=None):
    if trace is None:
        return None
    return {
        "status": trace.status.value,
        "iterations": trace.iterations,
        "final_update_norm": finite_or_none(trace.final_update_norm),
        "final_error_norm": finite_or_none(trace.final_error_norm),
        "observed_rate": finite_or_none(rate),
    }


def build_report(command, n, source, certificate=None, trace=None, timing_ms=0.0):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "matrix": {"n": int(n), "source": str(source)},
        "certificate": certificate,
        "trace": trace,
        "timing_ms": timing_ms,
    }


def dumps(report):
    """Serialise with stable key order; floats use the shortest exact repr."""
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False)
