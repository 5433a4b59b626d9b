""" Test the run configuration """

from multiprocessing import cpu_count

import numpy as np
import pytest
from jsonschema import ValidationError as SchemaValidationError

from minitwistor_tools.configuration import (
    RunConfiguration,
    ToleranceConfiguration,
    merge_overrides,
)
from minitwistor_tools.curve import ConfigurationError

SIMPLE = {"n": 2, "branch_points": [-3, -1, 1, 3]}


def test_defaults():
    """ Unset sections fall back to their defaults """
    configuration = RunConfiguration.from_dict(SIMPLE)
    assert configuration.n == 2
    assert configuration.seed == "upper"
    assert configuration.orientation == 1
    assert configuration.tolerances == ToleranceConfiguration()
    assert configuration.sweep.grid == 4
    assert configuration.equal_division().first == (1, 2)
    assert np.allclose(configuration.branch_config().f_coeffs, [9, 0, -10, 0, 1])


def test_lower_seed_and_division():
    """ The conjugate seed flips the orientation """
    configuration = RunConfiguration.from_dict(
        {"branch_points": [-3, -1, 1, 3], "seed": "lower", "division": "1,4"}
    )
    assert configuration.orientation == -1
    assert configuration.quarter().orientation == -1
    assert configuration.equal_division().second == (2, 3)


@pytest.mark.parametrize(
    "value",
    [
        {"n": 3, "branch_points": [-3, -1, 1, 3]},
        {"branch_points": [-3, -1, 1]},
        {"branch_points": [-3, 1, -1, 3]},
    ],
)
def test_invalid_curve(value):
    """ n must match and the points must be an increasing even set """
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_dict(value).branch_config()


@pytest.mark.parametrize(
    "value",
    [
        {"branch_points": [-1, 1], "tolerances": {"abel": -1.0}},
        {"branch_points": [-1, 1], "sweep": {"grid": 1}},
        {"branch_points": [-1, 1], "seed": "left"},
        {"branch_points": [-1, 1], "mode": "verify"},
        {"n": 1},
    ],
)
def test_schema_errors(value):
    """ Values outside the schema are rejected before use """
    with pytest.raises(SchemaValidationError):
        RunConfiguration.from_dict(value)


def test_f_coeffs_override():
    """ Explicit coefficients replace the expanded polynomial """
    value = dict(SIMPLE, f_coeffs=[9, 0, -10, 0, 1.5])
    config = RunConfiguration.from_dict(value).branch_config()
    assert config.f_coeffs[-1] == 1.5

    value = dict(SIMPLE, f_coeffs=[9, 0, -10])
    with pytest.raises(ConfigurationError):
        RunConfiguration.from_dict(value).branch_config()


def test_workers_are_capped():
    """ More workers than cores are reduced to the core count """
    value = dict(SIMPLE, sweep={"workers": 10 * cpu_count()})
    assert RunConfiguration.from_dict(value).sweep.workers == cpu_count()


def test_merge_overrides():
    """ Dotted keys address sections and None leaves values alone """
    value = {"branch_points": [-1, 1], "tolerances": {"abel": 1e-6}}
    merged = merge_overrides(
        value,
        {"tolerances.newton": 1e-9, "sweep.grid": 6, "seed": None, "verbose": True},
    )
    assert merged["tolerances"] == {"abel": 1e-6, "newton": 1e-9}
    assert merged["sweep"] == {"grid": 6}
    assert "seed" not in merged
    assert merged["verbose"] is True
    assert value["tolerances"] == {"abel": 1e-6}
