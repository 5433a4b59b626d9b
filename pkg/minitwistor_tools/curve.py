""" The hyperelliptic branch curve, its involutions, circles and the quarter """

from typing import Optional, Sequence, Tuple, Union
from math import inf, isfinite

import attr
import numpy as np
from numpy.polynomial import polynomial as npp
from typing_extensions import Literal

PointKind = Literal["finite", "infinity-plus", "infinity-minus"]
CircleFlavor = Literal["real", "pure-imaginary"]

Extended = Union[complex, float]

# Extended value used for the point at infinity of Λ and for poles
INFINITY: float = inf


class ConfigurationError(RuntimeError):
    """ Invalid branch point data """


def is_infinite(value: Extended) -> bool:
    """ True for the point at infinity of the extended plane """
    value = complex(value)
    return not (isfinite(value.real) and isfinite(value.imag))


def upper_sqrt(value: np.ndarray) -> np.ndarray:
    """ Principal square root with the cut approached from the upper half plane """
    value = np.asarray(value, dtype=complex)
    return np.sqrt(value.real + 1j * np.abs(value.imag))


@attr.s(auto_attribs=True, frozen=True, slots=True)
class BranchConfig:
    """ The 2n ordered real branch points and f(z) = ∏(z - aᵢ) """

    n: int
    branch_points: Tuple[float, ...]
    f_coeffs: np.ndarray = attr.ib(eq=False, repr=False)

    @property
    def genus(self) -> int:
        """ Genus g = n - 1 of the branch curve """
        return self.n - 1

    @property
    def points(self) -> np.ndarray:
        """ Branch points as an array """
        return np.array(self.branch_points, dtype=float)

    @property
    def scale(self) -> float:
        """ Size of the configuration, used for relative tolerances """
        return 1.0 + float(np.max(np.abs(self.points)))

    def evaluate(self, z: Extended) -> complex:
        """ Evaluate f through its stored coefficients """
        return complex(npp.polyval(complex(z), self.f_coeffs))

    def product(self, z: Extended) -> complex:
        """ Evaluate ∏(z - aᵢ) directly from the branch points """
        return complex(np.prod(complex(z) - self.points))

    def interval_index(self, x: float) -> int:
        """ Index i ∈ 0..2n with x in [aᵢ, aᵢ₊₁), a₀ = -∞, a₂ₙ₊₁ = ∞ """
        return int(np.searchsorted(self.points, x, side="right"))


def make_branch_config(points: Sequence[float]) -> BranchConfig:
    """ Validate branch points and expand f """

    values = [float(point) for point in points]

    if len(values) < 2 or len(values) % 2 != 0:
        raise ConfigurationError(
            "expected an even number (>= 2) of branch points, got {}".format(
                len(values)
            )
        )

    for index, value in enumerate(values):
        if not isfinite(value):
            raise ConfigurationError(
                "branch point a{} = {} is not finite".format(index + 1, value)
            )

    for index in range(len(values) - 1):
        left = values[index]
        right = values[index + 1]

        if left == right:
            raise ConfigurationError(
                "duplicate branch points a{} = a{} = {}".format(
                    index + 1, index + 2, left
                )
            )
        if left > right:
            raise ConfigurationError(
                "branch points not increasing: a{} = {} > a{} = {}".format(
                    index + 1, left, index + 2, right
                )
            )

    f_coeffs = npp.polyfromroots(values).real

    return BranchConfig(len(values) // 2, tuple(values), f_coeffs)


@attr.s(auto_attribs=True, frozen=True, slots=True)
class CurvePoint:
    """ A point (z, v) of Σ: v² = f(z), or one of the two points at infinity """

    kind: PointKind
    z: complex = 0j
    v: complex = 0j

    @staticmethod
    def finite(z: complex, v: complex) -> "CurvePoint":
        """ A finite point """
        return CurvePoint("finite", complex(z), complex(v))

    @staticmethod
    def infinity(sign: int) -> "CurvePoint":
        """ The point at infinity where v/zⁿ → sign """
        assert sign in (1, -1), "INTERNAL ERROR: infinity sign must be ±1"
        return CurvePoint("infinity-plus" if sign > 0 else "infinity-minus")

    @property
    def is_finite(self) -> bool:
        """ False for the two points at infinity """
        return self.kind == "finite"

    @property
    def sign(self) -> int:
        """ Limit of v/zⁿ for a point at infinity """
        assert not self.is_finite, "INTERNAL ERROR: sign of a finite point"
        return 1 if self.kind == "infinity-plus" else -1

    def other_sheet(self) -> "CurvePoint":
        """ (z, -v), exchanging the points at infinity """
        if not self.is_finite:
            return CurvePoint.infinity(-self.sign)
        return CurvePoint.finite(self.z, -self.v)

    def residual(self, config: BranchConfig) -> float:
        """ Relative residual |v² - f(z)| / (1 + |f(z)|) """
        if not self.is_finite:
            return 0.0
        value = config.product(self.z)
        return abs(self.v * self.v - value) / (1.0 + abs(value))


def point_distance(first: CurvePoint, second: CurvePoint) -> float:
    """ Distance used to identify points of Σ up to tolerance """
    if first.is_finite != second.is_finite:
        return inf
    if not first.is_finite:
        return 0.0 if first.kind == second.kind else inf

    scale = 1.0 + max(abs(first.v), abs(second.v))
    return abs(first.z - second.z) + abs(first.v - second.v) / scale


def lift_point(
    config: BranchConfig,
    z: Extended,
    sheet: int = 1,
    seed: Optional[complex] = None,
) -> CurvePoint:
    """ Lift z to Σ

    Without a seed, v = sheet · principal √f(z). With a seed the square root
    nearest to the seed is chosen. At infinity the sheet selects ∞₊ or ∞₋.
    """

    if is_infinite(z):
        return CurvePoint.infinity(1 if sheet >= 0 else -1)

    z = complex(z)
    root = complex(np.sqrt(complex(config.evaluate(z))))

    # Branch points are lifted exactly
    for point in config.branch_points:
        if z == point:
            root = 0j

    if seed is not None:
        if abs(seed - root) > abs(seed + root):
            root = -root
    elif sheet < 0:
        root = -root

    return CurvePoint.finite(z, root)


@attr.s(auto_attribs=True, frozen=True, slots=True)
class RamificationPoint:
    """ The ramification point rᵢ = (aᵢ, 0) """

    index: int
    point: CurvePoint


def ramification_point(config: BranchConfig, index: int) -> RamificationPoint:
    """ Ramification point over aᵢ, i ∈ 1..2n """
    if not 1 <= index <= 2 * config.n:
        raise ConfigurationError(
            "ramification index {} outside 1..{}".format(index, 2 * config.n)
        )
    return RamificationPoint(
        index, CurvePoint.finite(config.branch_points[index - 1], 0j)
    )


def apply_sigma(config: BranchConfig, point: CurvePoint) -> CurvePoint:
    """ Real structure σ(v, z) = ((-1)ⁿ v̄, z̄) """
    sign = -1 if config.n % 2 else 1
    if not point.is_finite:
        return CurvePoint.infinity(sign * point.sign)
    return CurvePoint.finite(point.z.conjugate(), sign * point.v.conjugate())


def apply_tau(config: BranchConfig, point: CurvePoint) -> CurvePoint:
    """ Hyperelliptic involution τ(v, z) = (-v, z) """
    return point.other_sheet()


@attr.s(auto_attribs=True, frozen=True, slots=True)
class CircleId:
    """ The circle Σᵢ over the arc Iᵢ of the real line """

    index: int
    flavor: CircleFlavor

    @property
    def is_real(self) -> bool:
        """ Fixed pointwise by σ """
        return self.flavor == "real"


def classify_circle(config: BranchConfig, index: int) -> CircleId:
    """ Circle over Iᵢ; real iff i ≡ n (mod 2) """
    index = index % (2 * config.n)
    flavor: CircleFlavor = "real" if (index - config.n) % 2 == 0 else "pure-imaginary"
    return CircleId(index, flavor)


def is_central(config: BranchConfig, circle: Optional[CircleId]) -> bool:
    """ The central circle lies over Iₙ = [aₙ, aₙ₊₁] """
    return circle is not None and circle.index == config.n


def circle_of_point(
    config: BranchConfig, point: CurvePoint, tol: float = 1e-10
) -> Optional[CircleId]:
    """ Circle containing a point over the real line, None off the real line """
    if not point.is_finite:
        return classify_circle(config, 0)

    if abs(point.z.imag) > tol * (1.0 + abs(point.z)):
        return None

    return classify_circle(config, config.interval_index(point.z.real))


def arc_samples(config: BranchConfig, index: int, count: int) -> np.ndarray:
    """ Interior sample abscissae of the arc Iᵢ in their order along the arc

    I₀ runs from a₂ₙ through ∞ to a₁; an exact pass
    through ∞ is returned as inf.
    """
    index = index % (2 * config.n)
    fractions = (np.arange(count) + 0.5) / count
    points = config.points

    if index > 0:
        middle = 0.5 * (points[index - 1] + points[index])
        half = 0.5 * (points[index] - points[index - 1])
        return np.asarray(middle - half * np.cos(np.pi * fractions))

    upper = points[-1]
    lower = points[0]
    samples = np.empty(count)
    for position, fraction in enumerate(fractions):
        denominator = 1.0 - 2.0 * fraction
        if denominator == 0.0:
            samples[position] = INFINITY
        else:
            samples[position] = (upper - (upper + lower) * fraction) / denominator
    return samples


@attr.s(auto_attribs=True, frozen=True, slots=True)
class QuarterPoint:
    """ A point of Σ together with its position relative to the quarter Σ″ """

    point: CurvePoint
    in_half: bool
    in_quarter: bool
    on_boundary: bool
    circle: Optional[CircleId] = None

    @property
    def interior(self) -> bool:
        """ In Σ″ but not on its boundary """
        return self.in_quarter and not self.on_boundary


@attr.s(auto_attribs=True, frozen=True, slots=True)
class Quarter:
    """ The quarter Σ″: one sheet of Σ over a closed half plane

    orientation +1 selects the upper half plane and is seeded at
    z = i(1 + max|aᵢ|) with v = +√f; orientation -1 is the conjugate seed.
    """

    config: BranchConfig
    orientation: int
    epsilon: int

    def branch(self, z: complex) -> complex:
        """ The continuous square root of f on the closed half plane """
        z = complex(z)
        if self.orientation > 0:
            return complex(np.prod(upper_sqrt(z - self.config.points)))
        mirrored = np.prod(upper_sqrt(z.conjugate() - self.config.points))
        return complex(mirrored).conjugate()

    @property
    def seed_point(self) -> CurvePoint:
        """ The seed lift defining the quarter """
        z = self.orientation * 1j * self.config.scale
        return lift_point(self.config, z)

    @property
    def infinity(self) -> CurvePoint:
        """ The point at infinity on the boundary of the quarter """
        return CurvePoint.infinity(self.epsilon)

    def value(self, z: complex) -> complex:
        """ v on the quarter over z """
        return self.epsilon * self.branch(z)

    def interior_point(self, z: complex) -> CurvePoint:
        """ Lift of z (in the half plane) to the quarter """
        return CurvePoint.finite(z, self.value(z))

    def boundary_parametrization(self, t: Extended) -> QuarterPoint:
        """ The unique point of ∂Σ″ over t ∈ ℝ ∪ {∞} """
        if is_infinite(t):
            point = self.infinity
        else:
            x = float(complex(t).real)
            point = CurvePoint.finite(x, self.value(x))
            if x in self.config.branch_points:
                point = CurvePoint.finite(x, 0j)

        circle = circle_of_point(self.config, point)
        return QuarterPoint(point, True, True, True, circle)

    def _contains(self, point: CurvePoint, tol: float) -> Tuple[bool, bool]:
        """ (in quarter, on boundary) """
        if not point.is_finite:
            return point.sign == self.epsilon, True

        height = self.orientation * point.z.imag
        margin = tol * (1.0 + abs(point.z))

        if height < -margin:
            return False, False

        on_boundary = height <= margin
        z = complex(point.z.real) if on_boundary else point.z

        branch = self.value(z)
        if abs(branch) <= margin:
            return on_boundary or abs(point.v) <= margin, on_boundary

        return abs(point.v - branch) < abs(point.v + branch), on_boundary

    def membership(self, point: CurvePoint, tol: float = 1e-10) -> QuarterPoint:
        """ Tag a point with its position relative to Σ′ and Σ″ """
        in_quarter, on_boundary = self._contains(point, tol)

        config = self.config
        swapped, _ = self._contains(apply_sigma(config, apply_tau(config, point)), tol)
        in_half = in_quarter or swapped

        circle = None
        if on_boundary or not point.is_finite:
            circle = circle_of_point(config, point, tol)

        return QuarterPoint(
            point, in_half, in_quarter, in_quarter and on_boundary, circle
        )


def make_quarter(config: BranchConfig, orientation: int = 1) -> Quarter:
    """ Build the quarter from the upper (+1) or conjugate (-1) seed """
    assert orientation in (1, -1), "INTERNAL ERROR: orientation must be ±1"

    base = Quarter(config, orientation, 1)
    seed = base.seed_point
    branch = base.branch(seed.z)
    epsilon = 1 if abs(seed.v - branch) <= abs(seed.v + branch) else -1

    return Quarter(config, orientation, epsilon)


def quarter_membership(quarter: Quarter, point: CurvePoint) -> QuarterPoint:
    """ Region tags of a point with respect to a quarter """
    return quarter.membership(point)


def boundary_parametrization(quarter: Quarter, t: Extended) -> QuarterPoint:
    """ The point of ∂Σ″ over t """
    return quarter.boundary_parametrization(t)
