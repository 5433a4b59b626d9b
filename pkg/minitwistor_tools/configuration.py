""" Configuration options """

from multiprocessing import cpu_count
from typing import Any, Dict, Optional, Tuple

import attr
import numpy as np
from jsonschema import validate as schema_validate
from typing_extensions import Literal

from .curve import (
    BranchConfig,
    ConfigurationError,
    Quarter,
    make_branch_config,
    make_quarter,
)
from .pencils import EqualDivision, central_division, parse_division
from .schema import (
    CONFIG as SCHEMA_CONFIG,
    SWEEP as SCHEMA_SWEEP,
    TOLERANCES as SCHEMA_TOLERANCES,
)

SeedSide = Literal["upper", "lower"]


@attr.s(auto_attribs=True, frozen=True, slots=True)
class ToleranceConfiguration:
    """ Numerical tolerances """

    root_cluster: float = 1e-5
    newton: float = 1e-10
    abel: float = 1e-7
    quadrature: float = 1e-12
    curve: float = 1e-10
    match: float = 1e-6

    @staticmethod
    def from_dict(value: Dict) -> "ToleranceConfiguration":
        """ Create a tolerance configuration from a dict """

        schema_validate(instance=value, schema=SCHEMA_TOLERANCES)

        return ToleranceConfiguration(
            value.get("root_cluster", 1e-5),
            value.get("newton", 1e-10),
            value.get("abel", 1e-7),
            value.get("quadrature", 1e-12),
            value.get("curve", 1e-10),
            value.get("match", 1e-6),
        )


@attr.s(auto_attribs=True, frozen=True, slots=True)
class SweepConfiguration:
    """ Sample densities of the sweeps and suites """

    grid: int = 4
    phases: int = 64
    circle_samples: int = 64
    trace_samples: int = 400
    interior_samples: int = 15
    generic_lines: int = 20
    workers: int = 1

    @staticmethod
    def from_dict(value: Dict) -> "SweepConfiguration":
        """ Create a sweep configuration from a dict """

        schema_validate(instance=value, schema=SCHEMA_SWEEP)

        return SweepConfiguration(
            value.get("grid", 4),
            value.get("phases", 64),
            value.get("circle_samples", 64),
            value.get("trace_samples", 400),
            value.get("interior_samples", 15),
            value.get("generic_lines", 20),
            min(value.get("workers", 1), cpu_count()),
        )


@attr.s(auto_attribs=True, frozen=True, slots=True)
class RunConfiguration:
    """ Everything a command needs: the curve, the seed and the numerics """

    branch_points: Tuple[float, ...]
    f_coeffs: Optional[Tuple[float, ...]] = None
    seed: SeedSide = "upper"
    division: Optional[str] = None
    tolerances: ToleranceConfiguration = ToleranceConfiguration()
    sweep: SweepConfiguration = SweepConfiguration()
    output: Optional[str] = None
    verbose: bool = False

    @property
    def n(self) -> int:
        """ Half the number of branch points """
        return len(self.branch_points) // 2

    @property
    def orientation(self) -> int:
        """ +1 for the upper seed, -1 for the conjugate seed """
        return 1 if self.seed == "upper" else -1

    def branch_config(self) -> BranchConfig:
        """ The validated curve; explicit f coefficients replace the expanded ones """
        config = make_branch_config(self.branch_points)

        if self.f_coeffs is not None:
            if len(self.f_coeffs) != config.f_coeffs.size:
                raise ConfigurationError(
                    "f_coeffs needs {} coefficients, got {}".format(
                        config.f_coeffs.size, len(self.f_coeffs)
                    )
                )
            config = attr.evolve(config, f_coeffs=np.array(self.f_coeffs, dtype=float))

        return config

    def quarter(self) -> Quarter:
        """ The quarter selected by the seed """
        return make_quarter(self.branch_config(), self.orientation)

    def equal_division(self) -> EqualDivision:
        """ The configured division, the central one by default """
        if self.division is None:
            return central_division(self.n)
        return parse_division(self.division, self.n)

    @staticmethod
    def from_dict(value: Dict) -> "RunConfiguration":
        """ Create a run configuration from a dict """

        schema_validate(instance=value, schema=SCHEMA_CONFIG)

        branch_points = tuple(float(point) for point in value["branch_points"])

        if len(branch_points) % 2 != 0:
            raise ConfigurationError(
                "expected an even number of branch points, got {}".format(
                    len(branch_points)
                )
            )

        n = value.get("n")
        if n is not None and 2 * n != len(branch_points):
            raise ConfigurationError(
                "n = {} does not match {} branch points".format(n, len(branch_points))
            )

        f_coeffs = value.get("f_coeffs")

        return RunConfiguration(
            branch_points,
            None if f_coeffs is None else tuple(float(c) for c in f_coeffs),
            value.get("seed", "upper"),
            value.get("division"),
            ToleranceConfiguration.from_dict(value.get("tolerances", {})),
            SweepConfiguration.from_dict(value.get("sweep", {})),
            value.get("output"),
            value.get("verbose", False),
        )


def merge_overrides(value: Dict, overrides: Dict[str, Any]) -> Dict:
    """ Apply command line overrides to a configuration dict

    Keys of the form "tolerances.abel" address nested sections; None values
    are ignored.
    """

    merged = {
        key: (dict(item) if isinstance(item, dict) else item)
        for key, item in value.items()
    }

    for key, item in overrides.items():
        if item is None:
            continue
        if "." in key:
            section, name = key.split(".", 1)
            merged.setdefault(section, {})[name] = item
        else:
            merged[key] = item

    return merged
