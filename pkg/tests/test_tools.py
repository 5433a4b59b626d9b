""" Test the command line interface """

import json

import pytest

from minitwistor_tools.tools import (
    EXIT_FAILURE,
    EXIT_IO,
    EXIT_SUCCESS,
    EXIT_USAGE,
    run,
)


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_verify_curve_suite(capsys):
    """ The default curve passes the curve suite """
    assert run(["verify", "--suite", "curve"]) == EXIT_SUCCESS
    captured = capsys.readouterr()
    assert json.loads(captured.out)["passed"] is True
    assert "Minitwistor Tools" in captured.err
    assert "SUCCESS" in captured.err


def test_verify_detects_tampering(tmp_path, capsys):
    """ Wrong f coefficients fail with exit code 1 """
    path = _write(
        tmp_path,
        "tampered.json",
        json.dumps({"branch_points": [-3, -1, 1, 3], "f_coeffs": [9, 0, -10, 0, 1.5]}),
    )
    assert run(["--config", path, "verify", "--suite", "curve"]) == EXIT_FAILURE
    captured = capsys.readouterr()
    assert json.loads(captured.out)["passed"] is False
    assert "FAILURE" in captured.err


def test_configuration_errors(tmp_path):
    """ Schema violations and bad curves are usage errors, missing files IO errors """
    bad_schema = _write(tmp_path, "schema.json", '{"branch_points": [-1, 1], "x": 1}')
    assert run(["--config", bad_schema, "jacobian"]) == EXIT_USAGE

    bad_json = _write(tmp_path, "broken.json", '{"branch_points": [')
    assert run(["--config", bad_json, "jacobian"]) == EXIT_USAGE

    odd = _write(tmp_path, "odd.json", '{"branch_points": [-1, 0, 1]}')
    assert run(["--config", odd, "jacobian"]) == EXIT_USAGE

    unsorted = _write(tmp_path, "unsorted.json", '{"branch_points": [1, -1]}')
    assert run(["--config", unsorted, "jacobian"]) == EXIT_USAGE

    missing = str(tmp_path / "missing.json")
    assert run(["--config", missing, "jacobian"]) == EXIT_IO

    assert run(["--tol-abel", "-1", "jacobian"]) == EXIT_USAGE


def test_toml_configuration(tmp_path, capsys):
    """ TOML files are accepted and overridden by flags """
    path = _write(
        tmp_path,
        "run.toml",
        'branch_points = [-3.0, -1.0, 1.0, 3.0]\ndivision = "1,2"\n',
    )
    assert run(["--config", path, "--division", "1,4", "trace", "--criticals"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["division"] == "1,4|2,3"
    assert len(record["criticals"]) == 2


def test_trace_csv(capsys):
    """ The trace is a CSV table over the parameter grid """
    assert run(["trace", "--samples", "50"]) == EXIT_SUCCESS
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "s,discriminant,non_real,regime"
    assert len(lines) == 51


def test_twistor_image(capsys):
    """ The image of a chain line over I₀ is the doubled conic """
    assert run(["twistor-image", "--index", "0", "--lam", "-5"]) == EXIT_SUCCESS
    record = json.loads(capsys.readouterr().out)
    assert record["line"]["kind"] == "chain"
    assert record["image"]["conic_multiplicity"] == 2
    assert record["image"]["lines"] == []


def test_twistor_image_from_c(capsys):
    """ A chain line can be given by its constant c """
    assert run(["twistor-image", "--index", "1", "--c", "0.5+0.5j"]) == EXIT_SUCCESS
    record = json.loads(capsys.readouterr().out)
    assert -3.0 < record["line"]["lam"] < -1.0
    assert record["image"]["lines"] == [["l1", 1], ["lbar1", 1]]


@pytest.mark.parametrize(
    "argv",
    [
        ["twistor-image"],
        ["twistor-image", "--index", "1"],
        ["twistor-image", "--p", "0.5j"],
        ["twistor-image", "--index", "2", "--lam", "0"],
    ],
)
def test_twistor_image_usage(argv):
    """ Incomplete or degenerate line data """
    assert run(argv) == EXIT_USAGE


def test_output_file(tmp_path, capsys):
    """ --out writes to a file instead of stdout """
    out = str(tmp_path / "jacobian.json")
    assert run(["--out", out, "jacobian"]) == EXIT_SUCCESS
    assert capsys.readouterr().out == ""
    with open(out) as stream:
        record = json.load(stream)
    assert record["genus"] == 1
    assert len(record["ramification_values"]) == 4
    assert record["riemann_residual"] < 1e-8


def test_plot_data(tmp_path):
    """ Two sheets of samples per circle """
    out = str(tmp_path / "circles.csv")
    assert run(["--out", out, "plot-data"]) == EXIT_SUCCESS
    with open(out) as stream:
        lines = stream.read().splitlines()
    assert lines[0] == "circle,flavor,sheet,sample,x,s_re,s_im"
    assert len(lines) == 1 + 4 * 2 * 64


def test_family_flags_exclude_each_other():
    """ --boundary-only and --interior-only cannot be combined """
    argv = ["family", "--boundary-only", "--interior-only"]
    assert run(argv) == EXIT_USAGE


def test_family_boundary(capsys):
    """ The boundary sweep records one member per target """
    assert run(["--grid", "2", "family", "--boundary-only"]) == EXIT_SUCCESS
    record = json.loads(capsys.readouterr().out)
    assert record["n"] == 2
    assert len(record["records"]) == 8
    assert all(item["error"] is None for item in record["records"])
