""" Period lattice, Abel-Jacobi map and the doubling cover of the real torus

Holomorphic differentials are ωₖ = z^{k-1} dz / v, k = 1..g, and the base
point of the Abel-Jacobi map is r₁. The homology basis consists of the loops
around the consecutive branch cuts [aₖ, aₖ₊₁], k = 1..2g, whose periods are
twice the half periods eₖ = ∫_{aₖ}^{aₖ₊₁} ω taken along the upper edge.
"""

from itertools import product
from typing import Callable, List, Optional, Sequence, Tuple

import attr
import numpy as np
from scipy.integrate import quad_vec

from .curve import (
    BranchConfig,
    CurvePoint,
    Quarter,
    QuarterPoint,
    arc_samples,
    upper_sqrt,
)
from .projective import DivisorOnSigma, Hyperplane, restrict_hyperplane

LLL_DELTA: float = 0.75

# Initial and largest node counts for Gauss-Chebyshev quadrature
CHEBYSHEV_NODES: int = 16
CHEBYSHEV_MAX_NODES: int = 1 << 16


class QuadratureError(RuntimeError):
    """ Quadrature did not converge """


class AmbiguousSheetError(RuntimeError):
    """ Two doubling candidates are equally close to the seed """


class ClosureError(RuntimeError):
    """ The boundary lift of the Seifert surface does not close """


def lll_reduce(basis: np.ndarray, delta: float = LLL_DELTA) -> np.ndarray:
    """ LLL reduction of the columns of a real basis """
    vectors = np.array(basis, dtype=float).T.copy()
    count = vectors.shape[0]

    def gram_schmidt(vectors: np.ndarray):  # type: ignore
        ortho = np.zeros_like(vectors)
        mu = np.zeros((count, count))
        for i in range(count):
            ortho[i] = vectors[i]
            for j in range(i):
                mu[i, j] = vectors[i] @ ortho[j] / (ortho[j] @ ortho[j])
                ortho[i] -= mu[i, j] * ortho[j]
        return ortho, mu

    ortho, mu = gram_schmidt(vectors)
    k = 1
    steps = 0

    while k < count and steps < 10000:
        steps += 1
        for j in range(k - 1, -1, -1):
            shift = round(mu[k, j])
            if shift != 0:
                vectors[k] -= shift * vectors[j]
                ortho, mu = gram_schmidt(vectors)

        lovasz = (delta - mu[k, k - 1] ** 2) * (ortho[k - 1] @ ortho[k - 1])
        if ortho[k] @ ortho[k] >= lovasz:
            k += 1
        else:
            vectors[[k, k - 1]] = vectors[[k - 1, k]]
            ortho, mu = gram_schmidt(vectors)
            k = max(k - 1, 1)

    return vectors.T


def _half_period(
    config: BranchConfig, index: int, tol: float, max_nodes: int
) -> np.ndarray:
    """ ∫ z^m dz / V(z + i0) over [aₖ, aₖ₊₁] (0-based k) for m = 0..g-1 """

    points = config.points
    left, right = points[index], points[index + 1]
    middle = 0.5 * (left + right)
    half = 0.5 * (right - left)
    others = np.delete(points, [index, index + 1])
    powers = np.arange(config.genus)

    previous: Optional[np.ndarray] = None
    nodes = CHEBYSHEV_NODES

    while nodes <= max_nodes:
        angles = (2 * np.arange(1, nodes + 1) - 1) * np.pi / (2 * nodes)
        x = middle + half * np.cos(angles)
        smooth = np.prod(upper_sqrt(x[:, np.newaxis] - others[np.newaxis, :]), axis=1)
        values = x[:, np.newaxis] ** powers[np.newaxis, :] / smooth[:, np.newaxis]
        current = -1j * np.pi / nodes * np.sum(values, axis=0)

        if previous is not None:
            increment = float(np.max(np.abs(current - previous)))
            if increment <= tol * (1.0 + float(np.max(np.abs(current)))):
                return current

        previous = current
        nodes *= 2

    raise QuadratureError(
        "Gauss-Chebyshev quadrature on [a{}, a{}] = [{}, {}] did not converge "
        "with {} nodes".format(index + 1, index + 2, left, right, max_nodes)
    )


def riemann_residual(matrix: np.ndarray) -> float:
    """ Smallest |Π E⁻¹ Πᵀ| / |Π|² over orientations of the chain cycles """

    genus = matrix.shape[0]
    if genus == 0:
        return 0.0

    size = 2 * genus
    scale = float(np.linalg.norm(matrix)) ** 2
    best = np.inf

    for signs in product((1.0, -1.0), repeat=size - 1):
        intersection = np.zeros((size, size))
        for k, sign in enumerate(signs):
            intersection[k, k + 1] = sign
            intersection[k + 1, k] = -sign
        inverse = np.linalg.inv(intersection)
        residual = float(np.linalg.norm(matrix @ inverse @ matrix.T)) / scale
        best = min(best, residual)

    return best


@attr.s(auto_attribs=True, frozen=True, slots=True)
class JacobianPoint:
    """ A vector of ℂᵍ understood modulo the period lattice """

    value: np.ndarray = attr.ib(
        eq=False, converter=lambda v: np.asarray(v, dtype=complex)
    )

    def __add__(self, other: "JacobianPoint") -> "JacobianPoint":
        return JacobianPoint(self.value + other.value)

    def __sub__(self, other: "JacobianPoint") -> "JacobianPoint":
        return JacobianPoint(self.value - other.value)

    def __neg__(self) -> "JacobianPoint":
        return JacobianPoint(-self.value)

    def scaled(self, factor: float) -> "JacobianPoint":
        """ factor · x """
        return JacobianPoint(factor * self.value)


class PeriodLattice:
    """ Periods of the chain cycles and the Abel-Jacobi map based at r₁ """

    config_: BranchConfig
    half_periods_: np.ndarray
    matrix_: np.ndarray
    basis_: np.ndarray
    reduced_: np.ndarray
    reduced_inverse_: np.ndarray
    tol_: float
    infinity_value_: Optional[np.ndarray] = None

    def __init__(self, config: BranchConfig, tol: float = 1e-12):
        self.config_ = config
        self.tol_ = tol

        genus = config.genus
        count = 2 * config.n - 1

        if genus == 0:
            self.half_periods_ = np.zeros((count, 0), dtype=complex)
        else:
            self.half_periods_ = np.array(
                [
                    _half_period(config, index, tol, CHEBYSHEV_MAX_NODES)
                    for index in range(count)
                ]
            )

        self.matrix_ = 2.0 * self.half_periods_[: 2 * genus].T
        self.basis_ = np.vstack([self.matrix_.real, self.matrix_.imag])

        if genus == 0:
            self.reduced_ = np.zeros((0, 0))
            self.reduced_inverse_ = np.zeros((0, 0))
        else:
            self.reduced_ = lll_reduce(self.basis_)
            self.reduced_inverse_ = np.linalg.inv(self.reduced_)

    @property
    def config(self) -> BranchConfig:
        """ The branch configuration """
        return self.config_

    @property
    def genus(self) -> int:
        """ Complex dimension of the Jacobian """
        return self.config_.genus

    @property
    def half_periods(self) -> np.ndarray:
        """ (2n-1) × g array of the half periods eₖ """
        return self.half_periods_

    @property
    def matrix(self) -> np.ndarray:
        """ The g × 2g period matrix """
        return self.matrix_

    def riemann_residual(self) -> float:
        """ Residual of the first Riemann bilinear relation """
        return riemann_residual(self.matrix_)

    def real_rank_condition(self) -> float:
        """ Condition number of the 2g real generators """
        if self.genus == 0:
            return 1.0
        return float(np.linalg.cond(self.basis_))

    def real_generators(self) -> np.ndarray:
        """ The g chain periods spanning the lattice of the real torus """
        parity = self.config_.n % 2
        columns = [k for k in range(2 * self.genus) if (k + 1) % 2 == parity]
        return self.matrix_[:, columns]

    def ramification_value(self, index: int) -> np.ndarray:
        """ 𝔞(rᵢ) along the upper edge, i ∈ 1..2n """
        return np.sum(self.half_periods_[: index - 1], axis=0)

    def _as_real(self, value: np.ndarray) -> np.ndarray:
        return np.concatenate([value.real, value.imag])

    def nearest_vector(self, value: np.ndarray) -> np.ndarray:
        """ Lattice vector nearest to value """
        genus = self.genus
        if genus == 0:
            return np.zeros(0, dtype=complex)

        target = self._as_real(np.asarray(value, dtype=complex))
        center = np.round(self.reduced_inverse_ @ target)

        best = None
        best_distance = np.inf
        for offset in product((-1.0, 0.0, 1.0), repeat=2 * genus):
            vector = self.reduced_ @ (center + np.array(offset))
            distance = float(np.linalg.norm(target - vector))
            if distance < best_distance:
                best, best_distance = vector, distance

        assert best is not None
        return best[:genus] + 1j * best[genus:]

    def distance(self, value: np.ndarray) -> float:
        """ Distance of value to the lattice """
        value = np.asarray(value, dtype=complex)
        if self.genus == 0:
            return 0.0
        return float(np.linalg.norm(value - self.nearest_vector(value)))

    def reduce(self, point: JacobianPoint) -> JacobianPoint:
        """ Representative nearest to the origin """
        return JacobianPoint(point.value - self.nearest_vector(point.value))

    def _upper_value(self, z: complex) -> np.ndarray:
        """ ∫ ω from r₁ to (z, V(z)) inside the closed upper half plane """

        points = self.config_.points
        genus = self.genus
        index = int(np.argmin(np.abs(z - points)))
        start = self.ramification_value(index + 1)

        if z == points[index]:
            return start

        anchor = points[index]
        root = complex(upper_sqrt(z - anchor))
        others = np.delete(points, index)
        powers = np.arange(genus)

        def integrand(s: float) -> np.ndarray:
            w = anchor + (z - anchor) * s * s
            values = 2.0 * root * w ** powers / np.prod(upper_sqrt(w - others))
            return np.concatenate([values.real, values.imag])

        result, _ = quad_vec(integrand, 0.0, 1.0, epsabs=self.tol_, epsrel=self.tol_)
        return start + result[:genus] + 1j * result[genus:]

    def _infinity_value(self) -> np.ndarray:
        """ ∫ ω from r₁ to ∞₊ along the upper edge """
        if self.infinity_value_ is not None:
            return self.infinity_value_

        points = self.config_.points
        genus = self.genus
        anchor = points[-1]
        others = points[:-1]
        powers = np.arange(genus)

        def integrand(y: float) -> np.ndarray:
            w = anchor + y * y
            values = 2.0 * w ** powers / np.prod(upper_sqrt(w - others))
            return np.concatenate([values.real, values.imag])

        result, _ = quad_vec(integrand, 0.0, np.inf, epsabs=self.tol_, epsrel=self.tol_)
        self.infinity_value_ = (
            self.ramification_value(2 * self.config_.n)
            + result[:genus]
            + 1j * result[genus:]
        )
        return self.infinity_value_

    def abel_point(self, point: CurvePoint) -> np.ndarray:
        """ 𝔞(p) = ∫_{r₁}^{p} ω """
        if self.genus == 0:
            return np.zeros(0, dtype=complex)

        if not point.is_finite:
            return point.sign * self._infinity_value()

        z = point.z
        v = point.v
        conjugated = z.imag < 0
        if conjugated:
            z, v = z.conjugate(), v.conjugate()

        branch = complex(np.prod(upper_sqrt(z - self.config_.points)))
        sign = 1 if abs(v - branch) <= abs(v + branch) else -1
        value = sign * self._upper_value(z)

        return value.conjugate() if conjugated else value


def compute_periods(config: BranchConfig, tol: float = 1e-12) -> PeriodLattice:
    """ Period lattice of the branch curve """
    return PeriodLattice(config, tol)


def abel_jacobi(lattice: PeriodLattice, divisor: DivisorOnSigma) -> JacobianPoint:
    """ 𝔞(D) = Σ mₚ 𝔞(p) """
    value = np.zeros(lattice.genus, dtype=complex)
    for point, multiplicity in divisor.entries:
        value = value + multiplicity * lattice.abel_point(point)
    return JacobianPoint(value)


def abel_residual(
    lattice: PeriodLattice, hyperplane: Hyperplane, radius: float = 1e-5
) -> float:
    """ Distance of 𝔞(h|_Σ) to the lattice; zero by Abel's theorem """
    divisor = restrict_hyperplane(hyperplane, lattice.config, radius)
    return lattice.distance(abel_jacobi(lattice, divisor).value)


def beta(lattice: PeriodLattice, point: CurvePoint) -> JacobianPoint:
    """ β(q) = 𝔞(q + q̄), a point of the real subspace """
    value = lattice.abel_point(point)
    sign = -1 if lattice.config.n % 2 else 1
    return JacobianPoint(value + sign * value.conjugate())


def doubling_candidates(
    lattice: PeriodLattice, target: JacobianPoint, real_only: bool = False
) -> List[JacobianPoint]:
    """ Solutions x of -2x ≡ target, the 2ᵍ real ones on the identity component """
    genus = lattice.genus
    base = -0.5 * target.value
    if genus == 0:
        return [JacobianPoint(base)]

    parity = lattice.config.n % 2
    out = []
    for choice in product((0.0, 1.0), repeat=2 * genus):
        weights = np.array(choice)
        if real_only and any(
            weights[k] and (k + 1) % 2 != parity for k in range(2 * genus)
        ):
            continue
        out.append(JacobianPoint(base + 0.5 * (lattice.matrix @ weights)))
    return out


def doubling_lift(
    lattice: PeriodLattice,
    target: JacobianPoint,
    seed: JacobianPoint,
    real_only: bool = False,
    ambiguity: float = 1e-6,
) -> JacobianPoint:
    """ The solution of -2x ≡ target continuing the seed """
    if lattice.genus == 0:
        return JacobianPoint(np.zeros(0, dtype=complex))

    candidates = doubling_candidates(lattice, target, real_only)
    distances = [
        lattice.distance(candidate.value - seed.value) for candidate in candidates
    ]
    order = np.argsort(distances)

    if len(order) > 1 and distances[order[1]] - distances[order[0]] < ambiguity:
        raise AmbiguousSheetError(
            "doubling candidates at distances {:.3e} and {:.3e} from the seed; "
            "refine the path".format(distances[order[0]], distances[order[1]])
        )

    best = candidates[int(order[0])].value
    # Representative next to the seed
    shift = lattice.nearest_vector(best - seed.value)
    return JacobianPoint(best - shift)


@attr.s(auto_attribs=True, frozen=True, slots=True)
class SeifertSurface:
    """ Lift of 𝔞(D′) over ∂Σ″ with per-sample diagnostics

    Interior samples continue the boundary lift straight into Σ″ and carry
    the values used to seed interior points.
    """

    samples: List[QuarterPoint]
    lifts: np.ndarray = attr.ib(eq=False)
    direct: np.ndarray = attr.ib(eq=False)
    consistency: np.ndarray = attr.ib(eq=False)
    closure_defect: float
    interior: List[QuarterPoint] = attr.ib(factory=list)
    interior_lifts: np.ndarray = attr.ib(
        eq=False, factory=lambda: np.zeros((0, 0), dtype=complex)
    )

    def seed_for(self, z: complex) -> JacobianPoint:
        """ Lift at the finite sample nearest to z """
        points = list(self.samples) + list(self.interior)
        values = list(self.lifts) + list(self.interior_lifts)
        positions = [
            abs(sample.point.z - z) if sample.point.is_finite else np.inf
            for sample in points
        ]
        if not values or not np.isfinite(min(positions)):
            raise ClosureError("the surface has no finite samples to seed from")
        return JacobianPoint(np.asarray(values[int(np.argmin(positions))]))


def boundary_samples(quarter: Quarter, per_arc: int = 16) -> List[QuarterPoint]:
    """ Points tracing ∂Σ″ once, from r₁ along the real line back through ∞ """
    config = quarter.config
    out = []
    for index in list(range(1, 2 * config.n)) + [0]:
        start = config.branch_points[index - 1 if index > 0 else -1]
        out.append(quarter.boundary_parametrization(start))
        for x in arc_samples(config, index, per_arc):
            out.append(quarter.boundary_parametrization(x))
    return out


def _climb(
    lattice: PeriodLattice,
    quarter: Quarter,
    start: QuarterPoint,
    value: np.ndarray,
    heights: Sequence[float],
    steps: int,
) -> List[Tuple[QuarterPoint, np.ndarray]]:
    """ Continue a boundary lift up the vertical line over start """
    x = start.point.z.real
    current = JacobianPoint(value)
    previous = 0.0
    out = []
    for height in heights:
        for y in np.linspace(previous, height, steps + 1)[1:]:
            z = complex(x, quarter.orientation * y)
            point = quarter.membership(quarter.interior_point(z))
            current = doubling_lift(lattice, beta(lattice, point.point), current)
        out.append((point, current.value))
        previous = height
    return out


def seifert_lift(
    lattice: PeriodLattice,
    samples: Sequence[QuarterPoint],
    residual_divisor: Optional[Callable[[QuarterPoint], DivisorOnSigma]] = None,
    tol: float = 1e-7,
    quarter: Optional[Quarter] = None,
    heights: Sequence[float] = (),
    steps: int = 8,
) -> SeifertSurface:
    """ Continue the doubling lift of β along the boundary and check it closes

    Given a quarter and heights, the lift is also continued up the vertical
    line over every finite boundary sample and recorded at those heights.
    """

    if residual_divisor is None:
        from .family import boundary_member

        quarter_config = lattice.config

        def residual_divisor(sample: QuarterPoint) -> DivisorOnSigma:
            return boundary_member(quarter_config, sample).residual_divisor

    samples = list(samples)
    genus = lattice.genus

    if genus == 0 or not samples:
        empty = np.zeros((len(samples), genus), dtype=complex)
        return SeifertSurface(samples, empty, empty, np.zeros(len(samples)), 0.0)

    direct = np.array(
        [abel_jacobi(lattice, residual_divisor(sample)).value for sample in samples]
    )

    lifts = np.empty_like(direct)
    lifts[0] = direct[0]
    current = JacobianPoint(direct[0])

    for index in range(1, len(samples)):
        target = beta(lattice, samples[index].point)
        current = doubling_lift(lattice, target, current)
        lifts[index] = current.value

    consistency = np.array(
        [lattice.distance(lifts[k] - direct[k]) for k in range(len(samples))]
    )

    closing = doubling_lift(lattice, beta(lattice, samples[0].point), current)
    closure_defect = float(np.linalg.norm(closing.value - lifts[0]))

    if closure_defect > tol:
        raise ClosureError(
            "boundary lift does not close: defect {:.3e} > {:.1e}".format(
                closure_defect, tol
            )
        )

    interior: List[QuarterPoint] = []
    interior_lifts: List[np.ndarray] = []
    if quarter is not None and len(heights):
        heights = sorted(heights)
        for index, sample in enumerate(samples):
            if not sample.point.is_finite:
                continue
            for point, value in _climb(
                lattice, quarter, sample, lifts[index], heights, steps
            ):
                interior.append(point)
                interior_lifts.append(value)

    return SeifertSurface(
        samples,
        lifts,
        direct,
        consistency,
        closure_defect,
        interior,
        np.array(interior_lifts, dtype=complex).reshape(len(interior), genus),
    )
