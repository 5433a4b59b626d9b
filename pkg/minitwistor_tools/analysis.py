""" Sweeps of the family h_q over a grid of the quarter """

import sys
from multiprocessing.pool import Pool
from typing import Any, Dict, List, Optional, Sequence

import attr
import numpy as np

from .classifier import SingularityRecord, classify_member, genus_drop_check
from .configuration import RunConfiguration
from .curve import Quarter, arc_samples, is_infinite
from .family import (
    FamilyMember,
    doubling_residual,
    restriction_defect,
    solve_member,
)
from .jacobian import PeriodLattice, abel_residual


def quarter_grid(
    quarter: Quarter, density: int, boundary: bool = True, interior: bool = True
) -> List[complex]:
    """ Targets over the closed half plane of a quarter

    Boundary targets are `density` samples on each of the 2n arcs; interior
    targets form a density × density grid over the branch interval at heights
    between a fifth of the curve scale and the scale itself.
    """

    config = quarter.config
    out: List[complex] = []

    if boundary:
        for index in range(2 * config.n):
            for x in arc_samples(config, index, density):
                out.append(complex(x) if not is_infinite(x) else complex(np.inf))

    if interior:
        points = config.points
        margin = 0.25 * (points[-1] - points[0])
        xs = np.linspace(points[0] - margin, points[-1] + margin, density)
        heights = config.scale * np.geomspace(0.2, 1.0, density)
        for height in heights:
            for x in xs:
                out.append(complex(x, quarter.orientation * height))

    return out


@attr.s(auto_attribs=True, frozen=True, slots=True)
class FamilyRecord:
    """ One solved (or failed) grid point of a sweep """

    z: complex
    member: Optional[FamilyMember] = None
    singularities: List[SingularityRecord] = attr.Factory(list)
    genus_drop: Optional[int] = None
    abel_residual: Optional[float] = None
    doubling_residual: Optional[float] = None
    restriction_defect: Optional[float] = None
    error: Optional[str] = None

    def __bool__(self) -> bool:
        """ True when the point was solved """
        return self.error is None

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        out: Dict[str, Any] = {"z": self.z, "error": self.error}
        if self.member is None:
            return out

        member = self.member
        out.update(
            {
                "q": [member.q.point.z, member.q.point.v],
                "provenance": member.provenance,
                "p": member.hyperplane.p_coeffs,
                "c_w": member.hyperplane.c_w,
                "residual_divisor": [
                    [point.kind, point.z, point.v, multiplicity]
                    for point, multiplicity in member.residual_divisor.entries
                ],
                "singularities": [record.to_dict() for record in self.singularities],
                "genus_drop": self.genus_drop,
                "abel_residual": self.abel_residual,
                "doubling_residual": self.doubling_residual,
                "restriction_defect": self.restriction_defect,
            }
        )
        return out


class FamilySweep:
    """ Solve h_q on many targets, optionally on a worker pool """

    configuration_: RunConfiguration
    quarter_: Quarter
    lattice_: Optional[PeriodLattice] = None

    def __init__(self, configuration: RunConfiguration):
        self.configuration_ = configuration
        self.quarter_ = configuration.quarter()

    @property
    def quarter(self) -> Quarter:
        """ The quarter the targets live on """
        return self.quarter_

    def lattice(self) -> PeriodLattice:
        """ The period lattice, created on first use """
        if self.lattice_ is None:
            self.lattice_ = PeriodLattice(
                self.quarter_.config, self.configuration_.tolerances.quadrature
            )
        return self.lattice_

    def _record(self, z: complex) -> FamilyRecord:
        tolerances = self.configuration_.tolerances
        config = self.quarter_.config
        radius = tolerances.root_cluster

        try:
            lattice = self.lattice()
            member = solve_member(
                config,
                self.quarter_,
                z,
                tolerances.newton,
                radius,
                lattice=lattice,
                abel_tol=tolerances.abel,
            )
            record = FamilyRecord(
                z,
                member,
                classify_member(config, member, radius),
                genus_drop_check(config, member, radius),
                abel_residual(lattice, member.hyperplane, radius),
                doubling_residual(lattice, member),
                restriction_defect(config, member, radius),
            )
        except RuntimeError as error:
            record = FamilyRecord(z, error="{}: {}".format(type(error).__name__, error))

        if self.configuration_.verbose:
            status = "ok" if record else "ERROR: {}".format(record.error)
            print("  z = {:.6g}: {}".format(z, status), file=sys.stderr, flush=True)

        return record

    def sweep(
        self, targets: Sequence[complex], num_threads: int = 1
    ) -> List[FamilyRecord]:
        """ Solve every target; failures are recorded, never raised """

        assert num_threads >= 1

        if num_threads == 1:
            return [self._record(z) for z in targets]

        # Workers build their own lattice
        lattice = self.lattice_
        self.lattice_ = None

        with Pool(num_threads) as pool:
            records = pool.map(self._record, list(targets))

        self.lattice_ = lattice
        return records
