""" Contains schemas for the configuration files """

POSITIVE = {"type": "number", "exclusiveMinimum": 0}

DENSITY = {"type": "integer", "minimum": 2}

TOLERANCES = {
    "type": "object",
    "properties": {
        "root_cluster": POSITIVE,
        "newton": POSITIVE,
        "abel": POSITIVE,
        "quadrature": POSITIVE,
        "curve": POSITIVE,
        "match": POSITIVE,
    },
    "additionalProperties": False,
}

SWEEP = {
    "type": "object",
    "properties": {
        "grid": DENSITY,
        "phases": DENSITY,
        "circle_samples": DENSITY,
        "trace_samples": DENSITY,
        "interior_samples": DENSITY,
        "generic_lines": DENSITY,
        "workers": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

CONFIG = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "branch_points": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
        },
        # Only for fault injection; normally derived from the branch points
        "f_coeffs": {"type": "array", "items": {"type": "number"}, "minItems": 3},
        "seed": {"type": "string", "enum": ["upper", "lower"]},
        "division": {"type": "string", "pattern": "^[0-9, ]+(\\|[0-9, ]+)?$"},
        "tolerances": TOLERANCES,
        "sweep": SWEEP,
        "output": {"type": "string"},
        "verbose": {"type": "boolean"},
    },
    "required": ["branch_points"],
    "additionalProperties": False,
}
