"""JSON schemas for every structured artifact the command line emits or reads."""

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["r", "indexSets"],
    "properties": {
        "r": {"type": "integer", "minimum": 2},
        "indexSets": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
    },
    "additionalProperties": False,
}

SOLVE_REPORT_SCHEMA = {
    "type": "object",
    "required": ["length", "witness", "nodesExplored", "mode", "r"],
    "properties": {
        "length": {"type": "integer", "minimum": 0},
        "witness": WITNESS_SCHEMA,
        "nodesExplored": {"type": "integer", "minimum": 0},
        "mode": {"type": "string", "enum": ["oracle", "fast"]},
        "r": {"type": "integer", "minimum": 2},
    },
    "additionalProperties": False,
}

CONSTRUCT_REPORT_SCHEMA = {
    "type": "object",
    "required": ["method", "parameters", "length", "witness"],
    "properties": {
        "method": {"type": "string"},
        "parameters": {"type": "object"},
        "length": {"type": "integer", "minimum": 0},
        "witness": WITNESS_SCHEMA,
        "covered": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["statistic", "trials", "mean", "std", "min", "max", "histogram"],
    "properties": {
        "statistic": {"type": "string"},
        "trials": {"type": "integer", "minimum": 1},
        "mean": {"type": "number"},
        "std": {"type": "number"},
        "min": {"type": "number"},
        "max": {"type": "number"},
        "histogram": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "number"}, {"type": "number"}, {"type": "integer"}],
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
    "additionalProperties": False,
}

CHECKPOINT_SCHEMA = {
    "type": "object",
    "required": ["k", "s", "nextWordIndex", "partial"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "s": {"type": "integer", "minimum": 1},
        "nextWordIndex": {"type": "integer", "minimum": 0},
        "partial": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["model", "statistic", "trials", "seed"],
    "properties": {
        "model": {"type": "object"},
        "statistic": {"type": "object", "required": ["name"]},
        "trials": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "streamIndex": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}
