""" Minitwistor Tools CLI interface """

import json
import sys
from argparse import ArgumentParser, Namespace
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO

from jsonschema import (
    ValidationError as SchemaValidationError,
    validate as schema_validate,
)
from toml import TomlDecodeError, load as toml_load

from . import __version__
from .analysis import FamilySweep, quarter_grid
from .classifier import trace_transitions
from .configuration import RunConfiguration, merge_overrides
from .curve import ConfigurationError, arc_samples, classify_circle
from .formats import write_csv, write_json
from .jacobian import PeriodLattice
from .pencils import circle_values
from .schema import CONFIG as SCHEMA_CONFIG
from .twistor_lines import (
    DegenerateLineError,
    FitError,
    central_line_image,
    chain_line,
    generic_line,
    image_of_chain_line,
    image_of_generic_line,
    image_of_invariant_line,
)
from .verify import SUITES, Verifier

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_CONFIG: Dict[str, Any] = {"n": 2, "branch_points": [-3.0, -1.0, 1.0, 3.0]}

TRACE_COLUMNS = ("s", "discriminant", "non_real", "regime")

PLOT_COLUMNS = ("circle", "flavor", "sheet", "sample", "x", "s_re", "s_im")


class UsageError(RuntimeError):
    """ Invalid command line arguments """


def _status(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _load(path: Optional[str]) -> Dict:
    if path is None:
        return dict(DEFAULT_CONFIG)

    with open(path, "r") as stream:
        if path.endswith(".toml"):
            return toml_load(stream)
        return json.load(stream)


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return

    with open(path, "w", newline="") as stream:
        yield stream


def _parser() -> ArgumentParser:
    parser = ArgumentParser(
        description="Minitwistor lines of toric A(2n-1) ALE instantons"
    )

    parser.add_argument("--config", type=str, help="JSON or TOML configuration")
    parser.add_argument("--out", type=str, help="output file (default: stdout)")
    parser.add_argument("--grid", type=int, help="grid density")
    parser.add_argument("--division", type=str, help="equal division, e.g. '1,4'")
    parser.add_argument("--seed", choices=["upper", "lower"])
    parser.add_argument("--workers", type=int)
    parser.add_argument("--verbose", action="store_true", default=None)

    for name in ("root_cluster", "newton", "abel", "quadrature", "curve", "match"):
        parser.add_argument(
            "--tol-{}".format(name.replace("_", "-")),
            dest="tol_{}".format(name),
            type=float,
        )

    commands = parser.add_subparsers(dest="command")
    commands.required = True

    verify = commands.add_parser("verify", help="run the verification suites")
    verify.add_argument("--suite", action="append", choices=SUITES)

    family = commands.add_parser("family", help="solve the family over the quarter")
    family.add_argument("--boundary-only", action="store_true")
    family.add_argument("--interior-only", action="store_true")

    trace = commands.add_parser("trace", help="transition trace of a division")
    trace.add_argument("--samples", type=int)
    trace.add_argument(
        "--criticals", action="store_true", help="JSON criticals and regimes"
    )

    image = commands.add_parser("twistor-image", help="image of a twistor line")
    image.add_argument("--index", type=int, help="chain interval or invariant line")
    image.add_argument("--lam", type=float, help="λ of a chain line")
    image.add_argument("--c", type=complex, help="constant c of a chain line")
    image.add_argument("--invariant", action="store_true")
    image.add_argument("--kappa", type=complex, help="κ of a central line")
    image.add_argument("--p", type=complex, help="p of a generic line")
    image.add_argument("--q", type=float, help="q of a generic line")

    commands.add_parser("jacobian", help="period lattice data")
    commands.add_parser("plot-data", help="circle samples and their ψ images")

    return parser


def _configuration(args: Namespace) -> RunConfiguration:
    value = _load(args.config)

    overrides: Dict[str, Any] = {
        "output": args.out,
        "division": args.division,
        "seed": args.seed,
        "verbose": args.verbose,
        "sweep.grid": args.grid,
        "sweep.workers": args.workers,
    }
    for name in ("root_cluster", "newton", "abel", "quadrature", "curve", "match"):
        overrides["tolerances." + name] = getattr(args, "tol_" + name)

    if getattr(args, "samples", None) is not None:
        overrides["sweep.trace_samples"] = args.samples

    merged = merge_overrides(value, overrides)
    schema_validate(instance=merged, schema=SCHEMA_CONFIG)

    return RunConfiguration.from_dict(merged)


def _verify(configuration: RunConfiguration, args: Namespace) -> int:
    verifier = Verifier(configuration)
    result = verifier.verify(args.suite)

    with _output(configuration.output) as stream:
        write_json(stream, result.to_dict())

    if result:
        _status("SUCCESS")
        return EXIT_SUCCESS

    _status("FAILURE")
    for check in result.failures():
        _status("  {}".format(check.name))
    return EXIT_FAILURE


def _family(configuration: RunConfiguration, args: Namespace) -> int:
    if args.boundary_only and args.interior_only:
        raise UsageError("--boundary-only and --interior-only exclude each other")

    sweep = FamilySweep(configuration)
    targets = quarter_grid(
        sweep.quarter,
        configuration.sweep.grid,
        boundary=not args.interior_only,
        interior=not args.boundary_only,
    )

    _status("Solving {} targets".format(len(targets)))
    records = sweep.sweep(targets, configuration.sweep.workers)
    solved = sum(1 for record in records if record)
    _status("  solved {} / {}".format(solved, len(records)))

    with _output(configuration.output) as stream:
        write_json(
            stream,
            {
                "n": configuration.n,
                "branch_points": list(configuration.branch_points),
                "seed": configuration.seed,
                "records": [record.to_dict() for record in records],
            },
        )

    return EXIT_SUCCESS


def _trace(configuration: RunConfiguration, args: Namespace) -> int:
    config = configuration.branch_config()
    division = configuration.equal_division()
    trace = trace_transitions(
        config, division, samples=configuration.sweep.trace_samples
    )

    _status("Division {}: {} criticals".format(division, len(trace.criticals)))
    for critical in trace.criticals:
        _status("  s = {:.12g}".format(critical.s))

    with _output(configuration.output) as stream:
        if args.criticals:
            write_json(
                stream,
                {
                    "division": str(division),
                    "criticals": trace.criticals,
                    "regimes": trace.regimes,
                },
            )
        else:
            write_csv(stream, trace.rows(config), TRACE_COLUMNS)

    return EXIT_SUCCESS


def _twistor_image(configuration: RunConfiguration, args: Namespace) -> int:
    config = configuration.branch_config()
    record: Dict[str, Any]

    if args.kappa is not None:
        image = central_line_image(config, args.kappa)
        record = {"line": {"kind": "central", "kappa": args.kappa}}
    elif args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise UsageError("a generic line needs both --p and --q")
        line = generic_line(config, args.p, args.q)
        generic = image_of_generic_line(
            config,
            line,
            configuration.quarter(),
            radius=configuration.tolerances.root_cluster,
        )
        with _output(configuration.output) as stream:
            write_json(
                stream,
                {
                    "line": {"kind": "generic", "p": args.p, "q": args.q},
                    "image": generic.to_dict(),
                },
            )
        return EXIT_SUCCESS
    elif args.index is None:
        raise UsageError("give --index, --kappa or --p/--q")
    elif args.invariant:
        image = image_of_invariant_line(config, args.index)
        record = {"line": {"kind": "invariant", "index": args.index}}
    else:
        if args.lam is not None:
            lam = args.lam
        elif args.c is not None:
            lam = chain_line(config, args.index, args.c).lam
        else:
            raise UsageError("a chain line needs --lam or --c")
        image = image_of_chain_line(config, args.index, lam)
        record = {"line": {"kind": "chain", "index": args.index, "lam": lam}}

    record["image"] = image.to_dict()

    with _output(configuration.output) as stream:
        write_json(stream, record)

    return EXIT_SUCCESS


def _jacobian(configuration: RunConfiguration) -> int:
    config = configuration.branch_config()
    lattice = PeriodLattice(config, configuration.tolerances.quadrature)

    _status("Period lattice of genus {}".format(lattice.genus))

    with _output(configuration.output) as stream:
        write_json(
            stream,
            {
                "genus": lattice.genus,
                "period_matrix": lattice.matrix,
                "riemann_residual": lattice.riemann_residual(),
                "real_rank_condition": lattice.real_rank_condition(),
                "real_generators": lattice.real_generators(),
                "ramification_values": [
                    lattice.ramification_value(index)
                    for index in range(1, 2 * config.n + 1)
                ],
            },
        )

    return EXIT_SUCCESS


def _plot_data(configuration: RunConfiguration) -> int:
    config = configuration.branch_config()
    count = configuration.sweep.circle_samples
    rows: List[Dict[str, Any]] = []

    for index in range(2 * config.n):
        circle = classify_circle(config, index)
        upper, lower = circle_values(config, index, count, configuration.orientation)
        xs = [float(x) for x in arc_samples(config, index, count)]
        for sheet, values in (("upper", upper), ("lower", lower)):
            for sample, (x, s) in enumerate(zip(xs, values)):
                rows.append(
                    {
                        "circle": index,
                        "flavor": circle.flavor,
                        "sheet": sheet,
                        "sample": sample,
                        "x": x,
                        "s": complex(s),
                    }
                )

    with _output(configuration.output) as stream:
        write_csv(stream, rows, PLOT_COLUMNS)

    return EXIT_SUCCESS


def run(argv: Optional[Sequence[str]] = None) -> int:
    """ Run the tool parsing the commandline arguments """
    _status(f"Minitwistor Tools {__version__}")

    parser = _parser()
    args = parser.parse_args(argv)

    try:
        configuration = _configuration(args)
    except OSError as error:
        _status("ERROR: cannot read configuration file")
        _status("       reason: {}".format(error))
        return EXIT_IO
    except (ValueError, TomlDecodeError) as error:
        _status("ERROR: configuration file is not valid JSON or TOML")
        _status("       reason: {}".format(error))
        return EXIT_USAGE
    except SchemaValidationError as error:
        _status("ERROR: configuration file validation failed")
        _status("       reason: {}".format(error.message))
        return EXIT_USAGE
    except ConfigurationError as error:
        _status("ERROR: invalid configuration")
        _status("       reason: {}".format(error))
        return EXIT_USAGE

    command = args.command

    try:
        if command == "verify":
            return _verify(configuration, args)
        elif command == "family":
            return _family(configuration, args)
        elif command == "trace":
            return _trace(configuration, args)
        elif command == "twistor-image":
            return _twistor_image(configuration, args)
        elif command == "jacobian":
            return _jacobian(configuration)
        elif command == "plot-data":
            return _plot_data(configuration)
        else:
            assert False, "INTERNAL ERROR: UNREACHABLE CODE"
    except OSError as error:
        _status("ERROR: cannot write output")
        _status("       reason: {}".format(error))
        return EXIT_IO
    except (UsageError, ConfigurationError, DegenerateLineError) as error:
        _status("ERROR: {}".format(error))
        return EXIT_USAGE
    except FitError as error:
        _status("ERROR: {}".format(error))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(run())
