""" Singularities of minitwistor lines and transitions along pencils """

from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import attr
import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import bisect
from sympy import Poly, Rational, discriminant, symbols
from typing_extensions import Literal

from .curve import (
    BranchConfig,
    CircleId,
    CurvePoint,
    apply_sigma,
    circle_of_point,
    point_distance,
)
from .family import FamilyMember
from .pencils import EqualDivision, parity_parameter, tangency_coeffs
from .polynomials import ROOT_INFINITY, aberth_roots, trim
from .projective import DivisorOnSigma, Hyperplane, restrict_hyperplane

SingularityKind = Literal["node-real", "node-conjugate", "contact", "cusp"]
RegimeLabel = Literal["real-nodes", "conjugate-pair"]


class GenusDropError(RuntimeError):
    """ Local genus drops do not add up """


class DegenerateDiscriminantError(RuntimeError):
    """ The tangency discriminant vanishes identically """


@attr.s(auto_attribs=True, frozen=True, slots=True)
class SingularityRecord:
    """ A singular point of a hyperplane section over a tangency point of Σ """

    point: CurvePoint
    kind: SingularityKind
    multiplicity: int
    genus_drop: int
    real: bool
    circle: Optional[CircleId] = None
    partner: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        return {
            "kind": self.kind,
            "point": [self.point.kind, self.point.z, self.point.v],
            "multiplicity": self.multiplicity,
            "genus_drop": self.genus_drop,
            "real": self.real,
            "circle": None if self.circle is None else self.circle.index,
            "partner": self.partner,
        }


def _restriction(
    config: BranchConfig, target: Union[FamilyMember, Hyperplane], radius: float
) -> DivisorOnSigma:
    if isinstance(target, FamilyMember):
        return target.restriction(config, radius)
    return restrict_hyperplane(target, config, radius)


def classify_divisor(
    config: BranchConfig, restriction: DivisorOnSigma, tol: float = 1e-8
) -> List[SingularityRecord]:
    """ Records for every point of multiplicity ≥ 2 of a restriction divisor """

    records: List[SingularityRecord] = []

    for point, multiplicity in restriction.entries:
        if multiplicity < 2:
            continue

        scale = 1.0 + (abs(point.z) if point.is_finite else 0.0)
        mirror = apply_sigma(config, point)
        real = point_distance(point, mirror) <= tol * scale
        circle = circle_of_point(config, point, tol) if real else None

        if multiplicity % 2:
            kind: SingularityKind = "cusp"
            drop = (multiplicity - 1) // 2
        elif multiplicity == 2:
            kind = "node-real" if real else "node-conjugate"
            drop = 1
        else:
            kind = "contact"
            drop = multiplicity // 2

        records.append(SingularityRecord(point, kind, multiplicity, drop, real, circle))

    # σ-partners of the non-real points
    paired = []
    for index, record in enumerate(records):
        partner = None
        if not record.real:
            mirror = apply_sigma(config, record.point)
            distances = [
                point_distance(mirror, other.point) if other_index != index else np.inf
                for other_index, other in enumerate(records)
            ]
            if distances and min(distances) <= 1e-6:
                partner = int(np.argmin(distances))
        paired.append(attr.evolve(record, partner=partner))

    return paired


def classify_member(
    config: BranchConfig,
    target: Union[FamilyMember, Hyperplane],
    radius: float = 1e-5,
    tol: float = 1e-8,
) -> List[SingularityRecord]:
    """ Singularity records of h|_Σ for a member or a bare hyperplane """
    return classify_divisor(config, _restriction(config, target, radius), tol)


def expected_genus_drop(config: BranchConfig, restriction: DivisorOnSigma) -> int:
    """ Total genus drop of the section cut out by a hyperplane

    An evenly tangent (split) section is two rational curves meeting in n
    points, so the drops add up to n. Otherwise the section is a double cover
    of the rational cut h ∩ C(Λ) branched along a divisor of degree 2n, of
    arithmetic genus n - 1 = g; for q + q̄ + 2D′ each of the g points of D′
    gives a node, which makes it rational with total drop g rather than n.
    """
    split = all(multiplicity % 2 == 0 for _, multiplicity in restriction.entries)
    return config.n if split else config.genus


def genus_drop_check(
    config: BranchConfig,
    target: Union[FamilyMember, Hyperplane],
    radius: float = 1e-5,
) -> int:
    """ Sum of local genus drops; raises when it differs from the expected total """
    restriction = _restriction(config, target, radius)
    records = classify_divisor(config, restriction)
    total = sum(record.genus_drop for record in records)
    expected = expected_genus_drop(config, restriction)

    if total != expected:
        raise GenusDropError(
            "genus drops add up to {}, expected {} ({} singular points)".format(
                total, expected, len(records)
            )
        )

    return total


def records_sigma_invariant(records: Sequence[SingularityRecord]) -> bool:
    """ Every non-real record has a partner and partners are mutual """
    for index, record in enumerate(records):
        if record.real:
            continue
        if record.partner is None or records[record.partner].partner != index:
            return False
    return True


@attr.s(auto_attribs=True, frozen=True, slots=True)
class Critical:
    """ A parameter where two tangency points collide """

    s: float
    bracket: Tuple[float, float]
    point: CurvePoint
    circle: Optional[CircleId]


@attr.s(auto_attribs=True, frozen=True, slots=True)
class Regime:
    """ Parameter interval with a fixed reality pattern of tangency points """

    lower: float
    upper: float
    label: RegimeLabel
    non_real: int


@attr.s(auto_attribs=True, frozen=True, slots=True)
class TransitionTrace:
    """ Discriminant zeros of a real pencil and the regimes between them """

    division: EqualDivision
    grid: np.ndarray = attr.ib(eq=False)
    values: np.ndarray = attr.ib(eq=False)
    criticals: List[Critical]
    regimes: List[Regime]

    @property
    def endpoints_real(self) -> bool:
        """ Both ends of the pencil (2D_L and 2D_R) are all-real """
        if not self.regimes:
            return False
        first, last = self.regimes[0], self.regimes[-1]
        return first.label == "real-nodes" and last.label == "real-nodes"

    def rows(self, config: BranchConfig) -> List[Dict[str, Any]]:
        """ One row per grid parameter """
        out = []
        for s, value in zip(self.grid, self.values):
            out.append(
                {
                    "s": float(s),
                    "discriminant": float(value),
                    "non_real": non_real_count(config, self.division, float(s)),
                    "regime": self._label(float(s)),
                }
            )
        return out

    def _label(self, s: float) -> str:
        for regime in self.regimes:
            if regime.lower <= s <= regime.upper:
                return regime.label
        return "critical"


def discriminant_coeffs(config: BranchConfig, division: EqualDivision) -> np.ndarray:
    """ Discriminant in z of A - κwB as ascending coefficients in w = s²

    κ = 1 for n even and -1 for n odd, so that w > 0 sweeps the real members.
    The leading coefficient 1 - κw is kept formal: collisions at infinity count.
    """

    z, w = symbols("z w")
    points = [Rational(repr(point)) for point in config.branch_points]
    kappa = 1 if config.n % 2 == 0 else -1

    a_poly = 1
    for index in division.first:
        a_poly = a_poly * (z - points[index - 1])
    b_poly = 1
    for index in division.second:
        b_poly = b_poly * (z - points[index - 1])

    pencil = Poly(a_poly - kappa * w * b_poly, z)
    value = Poly(discriminant(pencil), w)

    if value.is_zero:
        raise DegenerateDiscriminantError(
            "tangency discriminant of division {} vanishes identically".format(division)
        )

    return np.array([float(c) for c in reversed(value.all_coeffs())])


def tangency_roots(
    config: BranchConfig, division: EqualDivision, s: float
) -> np.ndarray:
    """ z-roots of A - t²B for the real member at s, infinite roots dropped """
    t = complex(parity_parameter(config.n, s))
    coeffs = trim(2 * tangency_coeffs(config, division, t))
    roots = aberth_roots(coeffs)
    return roots[np.abs(roots) < ROOT_INFINITY]


def non_real_count(
    config: BranchConfig, division: EqualDivision, s: float, tol: float = 1e-8
) -> int:
    """ Number of non-real tangency points """
    roots = tangency_roots(config, division, s)
    return int(np.sum(np.abs(roots.imag) > tol * (1.0 + np.abs(roots))))


def _double_point(
    config: BranchConfig, division: EqualDivision, s: float
) -> CurvePoint:
    """ The colliding pair at a critical parameter """
    t = complex(parity_parameter(config.n, s))
    coeffs = 2 * tangency_coeffs(config, division, t)
    trimmed = trim(coeffs, 1e-9)

    if trimmed.size < coeffs.size - 1:
        # two roots escape to infinity
        sign = 1 if abs(1 - t) < abs(1 + t) else -1
        return CurvePoint.infinity(sign)

    roots = aberth_roots(trimmed)
    best = (np.inf, 0j)
    for first in range(roots.size):
        for second in range(first + 1, roots.size):
            gap = abs(roots[first] - roots[second])
            if gap < best[0]:
                best = (gap, 0.5 * (roots[first] + roots[second]))

    z = complex(best[1].real) if abs(best[1].imag) < 1e-6 else best[1]
    v = complex(npp.polyval(z, division.a_coeffs(config))) / t
    return CurvePoint.finite(z, v)


def trace_transitions(
    config: BranchConfig,
    division: EqualDivision,
    grid: Optional[Sequence[float]] = None,
    samples: int = 400,
    xtol: float = 1e-12,
) -> TransitionTrace:
    """ Locate the collisions of tangency points along the real pencil of a division

    Sign changes of the discriminant on a geometric grid in s are refined by
    bisection; regimes between criticals are labelled by the reality of the
    tangency points at their geometric midpoint.
    """

    coeffs = discriminant_coeffs(config, division)

    if grid is None:
        grid = np.geomspace(1e-3, 1e3, samples)
    grid = np.asarray(sorted(grid), dtype=float)

    def value(s: float) -> float:
        return float(npp.polyval(s * s, coeffs))

    values = np.array([value(s) for s in grid])
    criticals: List[Critical] = []

    for index in range(grid.size - 1):
        left, right = grid[index], grid[index + 1]
        if values[index] == 0.0:
            location = left
        elif values[index] * values[index + 1] < 0:
            location = bisect(value, left, right, xtol=xtol * (1.0 + left))
        else:
            continue
        point = _double_point(config, division, location)
        circle = circle_of_point(config, point, 1e-6)
        criticals.append(Critical(float(location), (left, right), point, circle))

    edges = [grid[0]] + [critical.s for critical in criticals] + [grid[-1]]
    regimes = []
    for lower, upper in zip(edges[:-1], edges[1:]):
        middle = float(np.sqrt(lower * upper))
        count = non_real_count(config, division, middle)
        label: RegimeLabel = "real-nodes" if count == 0 else "conjugate-pair"
        regimes.append(Regime(float(lower), float(upper), label, count))

    return TransitionTrace(division, grid, values, criticals, regimes)
