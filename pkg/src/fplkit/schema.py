"""JSON schemas for the records printed by the command line."""

_COUNT = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "verification report",
    "type": "object",
    "required": ["identity", "size", "status", "lhs", "rhs", "per_pattern", "elapsed_ms"],
    "properties": {
        "identity": {"type": "string"},
        "size": {"type": "integer"},
        "status": {"enum": ["verified", "refuted", "skipped"]},
        "kind": {"enum": ["conjecture", "theorem"]},
        "lhs": {"anyOf": [{"type": "null"}, _COUNT, {"type": "array", "items": _COUNT}]},
        "rhs": {"anyOf": [{"type": "null"}, _COUNT, {"type": "array", "items": _COUNT}]},
        "per_pattern": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["word", "lhs", "rhs"],
                "properties": {
                    "word": {"type": "string"},
                    "lhs": {"anyOf": [_COUNT, {"type": "boolean"}]},
                    "rhs": {"anyOf": [_COUNT, {"type": "boolean"}]},
                },
            },
        },
        "witness": {
            "type": "object",
            "required": ["word", "lhs", "rhs"],
        },
        "note": {"type": "string"},
        "elapsed_ms": {"type": "integer", "minimum": 0},
    },
}

COUNT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "count record",
    "type": "object",
    "required": ["operation", "size", "class", "count"],
    "properties": {
        "operation": {"const": "count"},
        "size": {"type": "integer"},
        "class": {"enum": ["plain", "ht", "qt", "qqt"]},
        "count": _COUNT,
        "method": {"enum": ["enumeration", "formula"]},
        "coefficients": {"type": "array", "items": _COUNT},
    },
}

PATTERNS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "pattern distribution",
    "type": "object",
    "required": ["operation", "size", "class", "total", "distribution"],
    "properties": {
        "operation": {"const": "patterns"},
        "size": {"type": "integer"},
        "class": {"enum": ["plain", "ht", "qt", "qqt"]},
        "total": _COUNT,
        "distribution": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["word", "count"],
                "properties": {"word": {"type": "string", "pattern": "^[abc]*$"}, "count": _COUNT},
            },
        },
    },
}

TILINGS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "tiling count",
    "type": "object",
    "required": ["operation", "kind", "n", "size", "method", "count"],
    "properties": {
        "operation": {"const": "tilings"},
        "kind": {"enum": ["cssc", "qcsscpp"]},
        "n": {"type": "integer"},
        "size": {"type": "integer"},
        "method": {"enum": ["brute", "lgv", "ciucu", "formula"]},
        "count": _COUNT,
    },
}
