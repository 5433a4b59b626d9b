""" Rational normal curve, minitwistor equation, hyperplanes and restrictions """

from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import attr
import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import linear_sum_assignment
from sympy import Rational, expand, symbols
from typing_extensions import Literal

from .curve import (
    BranchConfig,
    CurvePoint,
    Extended,
    apply_sigma,
    is_infinite,
    lift_point,
    point_distance,
    ramification_point,
)
from .polynomials import ROOT_INFINITY, roots_with_multiplicity, trim

SplitRule = Literal["canonical", "extreme"]


class OffModelError(RuntimeError):
    """ Point of the projective model violating xy = ∏(z - aᵢu) """


class DivisorError(RuntimeError):
    """ Divisor arithmetic leaving the effective cone """


def rnc_embed(lam: Extended, n: int) -> np.ndarray:
    """ (1 : λ : … : λⁿ) on the rational normal curve Λ ⊂ ℙⁿ """
    out = np.zeros(n + 1, dtype=complex)
    if is_infinite(lam):
        out[n] = 1.0
        return out
    out[:] = complex(lam) ** np.arange(n + 1)
    return out


def _split(power: int, n: int, rule: SplitRule) -> Tuple[int, int]:
    if rule == "canonical":
        first = (power + 1) // 2
    else:
        first = min(n, power)
    return first, power - first


@attr.s(auto_attribs=True, frozen=True, slots=True)
class MinitwistorEquation:
    """ z_{n+1} z_{n+2} = Q(z₀, …, zₙ) with Q stored as a symmetric matrix """

    n: int
    matrix: np.ndarray = attr.ib(eq=False)
    rule: SplitRule = "canonical"

    def evaluate(self, coordinates: np.ndarray) -> complex:
        """ Q at (z₀, …, zₙ) """
        coordinates = np.asarray(coordinates, dtype=complex)
        return complex(coordinates @ self.matrix @ coordinates)

    def terms(self) -> Dict[Tuple[int, int], float]:
        """ Coefficients of the monomials z_a z_b with a >= b """
        out: Dict[Tuple[int, int], float] = {}
        for first in range(self.n + 1):
            for second in range(first + 1):
                value = self.matrix[first, second]
                if first != second:
                    value = 2 * value
                if value != 0:
                    out[(first, second)] = float(value)
        return out

    def residual(self, point: np.ndarray) -> float:
        """ Relative residual of a point of ℙⁿ⁺² """
        point = np.asarray(point, dtype=complex)
        quadric = self.evaluate(point[: self.n + 1])
        product = point[self.n + 1] * point[self.n + 2]
        return abs(product - quadric) / (
            abs(product) + abs(quadric) + float(np.max(np.abs(point))) ** 2
        )


def minitwistor_equation(
    config: BranchConfig, rule: SplitRule = "canonical"
) -> MinitwistorEquation:
    """ The quadric Q with Q(uⁿ, uⁿ⁻¹z, …, zⁿ) = ∏(z - aᵢu)

    The monomial v₁ᵈv₂²ⁿ⁻ᵈ is written as z_⌈d/2⌉ z_⌊d/2⌋ by the canonical rule
    and as z_min(n,d) z_{d - min(n,d)} by the extreme rule.
    """

    n = config.n
    matrix = np.zeros((n + 1, n + 1))

    for power, coeff in enumerate(config.f_coeffs):
        first, second = _split(power, n, rule)
        if first == second:
            matrix[first, second] += coeff
        else:
            matrix[first, second] += 0.5 * coeff
            matrix[second, first] += 0.5 * coeff

    return MinitwistorEquation(n, matrix, rule)


def exact_identity_holds(config: BranchConfig, rule: SplitRule = "canonical") -> bool:
    """ Check Q(uⁿ, …, zⁿ) - ∏(z - aᵢu) ≡ 0 in rational arithmetic """

    z, u = symbols("z u")
    n = config.n
    points = [Rational(repr(point)) for point in config.branch_points]

    product = 1
    for point in points:
        product = product * (z - point * u)
    expanded = expand(product)
    coefficients = [
        expanded.coeff(z, power).coeff(u, 2 * n - power) for power in range(2 * n + 1)
    ]

    monomials = [u ** (n - index) * z ** index for index in range(n + 1)]
    quadric = 0
    for power, coeff in enumerate(coefficients):
        first, second = _split(power, n, rule)
        quadric = quadric + coeff * monomials[first] * monomials[second]

    return bool(expand(quadric - product) == 0)


def quotient_map(
    x: complex,
    y: complex,
    z: complex,
    u: complex,
    config: BranchConfig,
    tol: float = 1e-10,
) -> np.ndarray:
    """ (uⁿ : uⁿ⁻¹z : … : zⁿ : x : y) for a point with xy = ∏(z - aᵢu) """

    n = config.n
    product = complex(np.prod(z - np.asarray(config.points) * u))
    scale = abs(x * y) + abs(product) + (abs(z) + abs(u) * config.scale) ** (2 * n)

    if abs(x * y - product) > tol * scale:
        raise OffModelError(
            "point off the model: |xy - ∏(z - aᵢu)| = {:.3e} (scale {:.3e})".format(
                abs(x * y - product), scale
            )
        )

    out = np.empty(n + 3, dtype=complex)
    out[: n + 1] = [u ** (n - index) * z ** index for index in range(n + 1)]
    out[n + 1] = x
    out[n + 2] = y

    if not np.any(out):
        raise OffModelError("degenerate point: all coordinates vanish")

    return out


def normalize_projective(vector: np.ndarray) -> np.ndarray:
    """ Divide by the largest-magnitude entry """
    vector = np.asarray(vector, dtype=complex)
    index = int(np.argmax(np.abs(vector)))
    if vector[index] == 0:
        raise OffModelError("zero vector has no projective class")
    return vector / vector[index]


def projective_distance(first: np.ndarray, second: np.ndarray) -> float:
    """ Fubini-Study sine distance between two projective points

    Taken from the 2 × 2 minors of the normalized pair, which stay accurate
    down to rounding level for nearly parallel vectors.
    """
    first = np.asarray(first, dtype=complex)
    second = np.asarray(second, dtype=complex)
    first_norm = float(np.linalg.norm(first))
    second_norm = float(np.linalg.norm(second))
    if first_norm == 0 or second_norm == 0:
        raise OffModelError("zero vector has no projective class")
    first = first / first_norm
    second = second / second_norm
    minors = np.outer(first, second) - np.outer(second, first)
    return float(min(1.0, np.linalg.norm(minors) / np.sqrt(2.0)))


@attr.s(auto_attribs=True, frozen=True, slots=True)
class Hyperplane:
    """ The hyperplane Σ pₘ zₘ - c_w w = 0 of ℙⁿ⁺¹

    On Σ it cuts out the zeros of P(z) - c_w v.
    """

    p_coeffs: np.ndarray = attr.ib(
        eq=False, converter=lambda value: np.asarray(value, dtype=complex)
    )
    c_w: complex = attr.ib(default=0j, converter=complex)

    @property
    def n(self) -> int:
        """ Degree of the binary form P """
        return int(self.p_coeffs.size - 1)

    @property
    def vector(self) -> np.ndarray:
        """ Coefficients (p₀, …, pₙ, c_w) """
        return np.concatenate([self.p_coeffs, [self.c_w]])

    def lift(self) -> np.ndarray:
        """ The hyperplane Π⁻¹(h) of ℙⁿ⁺² as (p, α, β), α = β = -c_w/2 """
        half = -0.5 * self.c_w
        return np.concatenate([self.p_coeffs, [half, half]])

    @staticmethod
    def from_vector(vector: np.ndarray) -> "Hyperplane":
        """ Inverse of vector """
        vector = np.asarray(vector, dtype=complex)
        return Hyperplane(vector[:-1], vector[-1])

    @staticmethod
    def from_lift(lift: np.ndarray, tol: float = 1e-9) -> "Hyperplane":
        """ Project a hyperplane of ℙⁿ⁺² through the centre 𝐚 = (0:…:0:1:-1) """
        lift = np.asarray(lift, dtype=complex)
        alpha, beta = lift[-2], lift[-1]
        if abs(alpha - beta) > tol * float(np.max(np.abs(lift))):
            raise OffModelError(
                "hyperplane does not pass through the centre: α - β = {:.3e}".format(
                    abs(alpha - beta)
                )
            )
        return Hyperplane(lift[:-2], -(alpha + beta))

    def evaluate(self, point: CurvePoint) -> complex:
        """ P(z) - c_w v at a finite point """
        assert point.is_finite, "INTERNAL ERROR: evaluate at infinity"
        return complex(npp.polyval(point.z, self.p_coeffs) - self.c_w * point.v)

    def normalized(self) -> "Hyperplane":
        """ Scale so that the largest-magnitude coefficient equals one """
        return Hyperplane.from_vector(normalize_projective(self.vector))

    def is_zero(self) -> bool:
        """ True for the zero vector """
        return not np.any(self.vector)

    def is_real(self, tol: float = 1e-9) -> bool:
        """ Real up to scaling: P real and (-1)ⁿ c̄_w = c_w """
        if self.is_zero():
            return False

        coeffs = self.p_coeffs
        if not np.any(np.abs(coeffs) > 0):
            return True

        index = int(np.argmax(np.abs(coeffs)))
        scaled = self.vector / coeffs[index]
        sign = -1 if self.n % 2 else 1

        return bool(
            np.max(np.abs(scaled[:-1].imag)) <= tol
            and abs(sign * scaled[-1].conjugate() - scaled[-1]) <= tol
        )

    def distance(self, other: "Hyperplane") -> float:
        """ Projective distance between coefficient vectors """
        return projective_distance(self.vector, other.vector)


def passes_through_vertex(hyperplane: Hyperplane, tol: float = 1e-12) -> bool:
    """ True iff c_w = 0, i.e. h contains the vertex of the cone """
    scale = float(np.max(np.abs(hyperplane.vector)))
    return abs(hyperplane.c_w) <= tol * scale


@attr.s(auto_attribs=True, frozen=True, slots=True)
class LineLabel:
    """ One of the lines ℓᵢ (bar False) or ℓ̄ᵢ (bar True) on 𝒯 """

    index: int
    bar: bool = False

    def __str__(self) -> str:
        return "{}{}".format("lbar" if self.bar else "l", self.index)

    def ramification_point(self, config: BranchConfig) -> CurvePoint:
        """ ℓᵢ ∩ ℓ̄ᵢ lies over rᵢ """
        return ramification_point(config, self.index).point


@attr.s(auto_attribs=True, frozen=True, slots=True)
class DivisorOnSigma:
    """ Effective divisor: points of Σ with positive multiplicities """

    entries: Tuple[Tuple[CurvePoint, int], ...] = ()

    @property
    def degree(self) -> int:
        """ Sum of multiplicities """
        return sum(multiplicity for _, multiplicity in self.entries)

    @property
    def points(self) -> List[CurvePoint]:
        """ Support of the divisor """
        return [point for point, _ in self.entries]

    def expanded(self) -> List[CurvePoint]:
        """ Points repeated by multiplicity """
        out: List[CurvePoint] = []
        for point, multiplicity in self.entries:
            out.extend([point] * multiplicity)
        return out

    def multiplicity(self, point: CurvePoint, tol: float = 1e-6) -> int:
        """ Multiplicity at a point, zero when absent """
        return sum(
            multiplicity
            for other, multiplicity in self.entries
            if point_distance(point, other) <= tol
        )

    def __add__(self, other: "DivisorOnSigma") -> "DivisorOnSigma":
        return make_divisor(list(self.entries) + list(other.entries))

    def scaled(self, factor: int) -> "DivisorOnSigma":
        """ factor · D """
        assert factor >= 0, "INTERNAL ERROR: negative divisor scaling"
        return make_divisor([(point, factor * mult) for point, mult in self.entries])

    def subtract(self, other: "DivisorOnSigma", tol: float = 1e-6) -> "DivisorOnSigma":
        """ D - E for E ≤ D """
        remaining = [[point, multiplicity] for point, multiplicity in self.entries]

        for point, multiplicity in other.entries:
            best = None
            best_distance = tol
            for entry in remaining:
                distance = point_distance(point, entry[0])
                if entry[1] > 0 and distance <= best_distance:
                    best, best_distance = entry, distance
            if best is None or best[1] < multiplicity:
                raise DivisorError("divisor is not contained: missing {}".format(point))
            best[1] -= multiplicity

        return make_divisor([(p, m) for p, m in remaining if m > 0])

    def halved(self) -> "DivisorOnSigma":
        """ D/2 for a divisor with even multiplicities """
        for point, multiplicity in self.entries:
            if multiplicity % 2:
                raise DivisorError(
                    "odd multiplicity {} at {}".format(multiplicity, point)
                )
        return make_divisor([(p, m // 2) for p, m in self.entries])

    def apply(
        self,
        involution: Callable[[BranchConfig, CurvePoint], CurvePoint],
        config: BranchConfig,
    ) -> "DivisorOnSigma":
        """ Image under a point map such as apply_sigma """
        return make_divisor(
            [(involution(config, point), mult) for point, mult in self.entries]
        )

    def distance(self, other: "DivisorOnSigma") -> float:
        """ Largest matched point distance, inf if degrees differ """
        first = self.expanded()
        second = other.expanded()

        if len(first) != len(second):
            return np.inf
        if not first:
            return 0.0

        cost = np.array([[point_distance(a, b) for b in second] for a in first])
        finite = np.where(np.isfinite(cost), cost, 1e300)
        rows, columns = linear_sum_assignment(finite)
        return float(np.max(cost[rows, columns]))

    def matches(self, other: "DivisorOnSigma", tol: float = 1e-8) -> bool:
        """ Equality as multisets up to tolerance """
        return self.distance(other) <= tol


def make_divisor(
    entries: Iterable[Tuple[CurvePoint, int]], tol: float = 1e-9
) -> DivisorOnSigma:
    """ Build a divisor, merging coincident points """
    merged: List[List] = []
    for point, multiplicity in entries:
        if multiplicity <= 0:
            continue
        for entry in merged:
            if point_distance(point, entry[0]) <= tol:
                entry[1] += multiplicity
                break
        else:
            merged.append([point, multiplicity])
    return DivisorOnSigma(tuple((point, int(mult)) for point, mult in merged))


def _snap_branch(config: BranchConfig, z: complex, radius: float) -> Optional[float]:
    for point in config.branch_points:
        if abs(z - point) <= radius * (1.0 + abs(point)):
            return point
    return None


def pullback_divisor(
    config: BranchConfig, roots: Sequence[Tuple[complex, int]], radius: float = 1e-5
) -> DivisorOnSigma:
    """ Divisor of a binary form of degree n with the given roots, pulled back by π """

    n = config.n
    entries: List[Tuple[CurvePoint, int]] = []
    finite = 0

    for root, multiplicity in roots:
        if abs(root) >= ROOT_INFINITY or is_infinite(root):
            continue
        finite += multiplicity
        branch = _snap_branch(config, root, radius)
        if branch is not None:
            entries.append((CurvePoint.finite(branch, 0j), 2 * multiplicity))
        else:
            entries.append((lift_point(config, root, 1), multiplicity))
            entries.append((lift_point(config, root, -1), multiplicity))

    if finite > n:
        raise DivisorError("binary form of degree {} > n = {}".format(finite, n))

    entries.append((CurvePoint.infinity(1), n - finite))
    entries.append((CurvePoint.infinity(-1), n - finite))
    return make_divisor(entries)


def restrict_hyperplane(
    hyperplane: Hyperplane, config: BranchConfig, radius: float = 1e-5
) -> DivisorOnSigma:
    """ Divisor of P(z) - c_w v on Σ, of degree 2n including points at infinity """

    if hyperplane.is_zero():
        raise RuntimeError("INTERNAL ERROR: zero hyperplane has no restriction")

    n = config.n
    p_coeffs = hyperplane.p_coeffs

    if passes_through_vertex(hyperplane, 1e-14):
        coeffs = trim(p_coeffs)
        return pullback_divisor(config, roots_with_multiplicity(coeffs, radius), radius)

    c_w = hyperplane.c_w
    remainder = npp.polysub(
        npp.polymul(p_coeffs, p_coeffs), (c_w * c_w) * np.asarray(config.f_coeffs)
    )

    entries: List[Tuple[CurvePoint, int]] = []
    finite = 0

    for root, multiplicity in roots_with_multiplicity(remainder, radius):
        if abs(root) >= ROOT_INFINITY:
            continue
        finite += multiplicity
        branch = _snap_branch(config, root, radius)
        if branch is not None:
            point = CurvePoint.finite(branch, 0j)
        else:
            seed = complex(npp.polyval(root, p_coeffs)) / c_w
            point = lift_point(config, root, seed=seed)
        entries.append((point, multiplicity))

    leading = p_coeffs[n]
    sign = 1 if abs(leading - c_w) < abs(leading + c_w) else -1
    entries.append((CurvePoint.infinity(sign), 2 * n - finite))

    return make_divisor(entries)


def sigma_invariant(
    divisor: DivisorOnSigma, config: BranchConfig, tol: float = 1e-8
) -> bool:
    """ True when σ maps the divisor to itself as a multiset """
    return divisor.matches(divisor.apply(apply_sigma, config), tol)
