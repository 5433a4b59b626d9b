""" Test the configuration schemas """

import pytest

from jsonschema.validators import (
    validator_for as schema_validator_for,
    validate as schema_validate,
)

from minitwistor_tools.schema import CONFIG, SWEEP, TOLERANCES

SIMPLE_EXAMPLE = {"branch_points": [-1.0, 1.0]}

ADVANCED_EXAMPLE = {
    "n": 3,
    "branch_points": [-5, -3, -1, 1, 3, 5],
    "seed": "lower",
    "division": "1,2,6|3,4,5",
    "tolerances": {"root_cluster": 1e-6, "abel": 1e-8, "match": 1e-5},
    "sweep": {"grid": 6, "trace_samples": 800, "workers": 4},
    "output": "family.json",
    "verbose": True,
}

FAULT_INJECTION_EXAMPLE = {
    "n": 2,
    "branch_points": [-3, -1, 1, 3],
    "f_coeffs": [9, 0, -10, 0, 1.5],
}


@pytest.mark.parametrize("schema", [TOLERANCES, SWEEP, CONFIG])
def test_schema(schema):
    """ Test if the schemas are valid schemas """
    schema_validator = schema_validator_for(True)
    schema_validator.check_schema(schema)


@pytest.mark.parametrize(
    "example", [SIMPLE_EXAMPLE, ADVANCED_EXAMPLE, FAULT_INJECTION_EXAMPLE]
)
def test_example(example):
    """ Test examples """
    schema_validate(example, CONFIG)
