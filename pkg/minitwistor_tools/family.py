""" The family of real hyperplanes h_q over the quarter Σ″

Boundary members are explicit. Interior members solve

    P(z)² - γ f(z) = χ (z - z_q)(z - z̄_q) S(z)²,    γ = c_w²,

for the real polynomials P (degree n) and S (degree g), continuing from an
anchor on the central semicircle.
"""

from typing import List, Optional, Sequence, Tuple, Union

import attr
import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import root as scipy_root
from typing_extensions import Literal

from .curve import (
    BranchConfig,
    CurvePoint,
    Extended,
    Quarter,
    QuarterPoint,
    apply_sigma,
    is_infinite,
    lift_point,
    point_distance,
)
from .jacobian import PeriodLattice, abel_jacobi, beta
from .pencils import (
    central_division,
    family_member,
    parity_parameter,
    psi_evaluate,
    psi_fiber,
    target_coordinate,
)
from .polynomials import ROOT_INFINITY, roots_with_multiplicity
from .projective import (
    DivisorOnSigma,
    Hyperplane,
    make_divisor,
    passes_through_vertex,
    projective_distance,
    pullback_divisor,
    restrict_hyperplane,
)
from .results import CheckResult, Report, check_below

Provenance = Literal["boundary-explicit", "interior-continued", "rotated"]


class ContinuationError(RuntimeError):
    """ Newton continuation failed """


class CuspConfigurationError(RuntimeError):
    """ q lies in the support of D′ """


class OffCentreError(RuntimeError):
    """ A rotated lift misses the centre and has no restriction to Σ """


@attr.s(auto_attribs=True, frozen=True, slots=True)
class FamilyMember:
    """ h_q with residual divisor D′, h_q|_Σ = q + q̄ + 2D′ """

    q: QuarterPoint
    hyperplane: Hyperplane
    residual_divisor: DivisorOnSigma
    provenance: Provenance
    phase: complex = 1 + 0j

    def lift(self) -> np.ndarray:
        """ Coefficients (p, α/t, βt) of the hyperplane of ℙⁿ⁺² """
        base = self.hyperplane.lift()
        out = base.copy()
        out[-2] = base[-2] / self.phase
        out[-1] = base[-1] * self.phase
        return out

    def through_center(self, tol: float = 1e-9) -> bool:
        """ The lift contains the centre 𝐚 = (0:…:0:1:-1) """
        lift = self.lift()
        return bool(abs(lift[-2] - lift[-1]) <= tol * float(np.max(np.abs(lift))))

    def restriction(self, config: BranchConfig, radius: float = 1e-5) -> DivisorOnSigma:
        """ h|_Σ, defined while the lift passes through the centre """
        if not self.through_center():
            raise OffCentreError(
                "phase {} moves the lift off the centre".format(self.phase)
            )
        return restrict_hyperplane(self.hyperplane, config, radius)

    def expected_restriction(self, config: BranchConfig) -> DivisorOnSigma:
        """ q + q̄ + 2D′ """
        point = self.q.point
        return make_divisor(
            [(point, 1), (apply_sigma(config, point), 1)]
            + [(p, 2 * m) for p, m in self.residual_divisor.entries]
        )


@attr.s(auto_attribs=True, frozen=True, slots=True)
class SlicePath:
    """ Points of a half plane from an anchor on the real line to a target """

    quarter: Quarter
    points: Tuple[complex, ...]
    min_step: float = 1e-6

    @property
    def anchor(self) -> QuarterPoint:
        """ The boundary point the path starts from """
        return self.quarter.boundary_parametrization(self.points[0].real)

    def quarter_point(self, z: complex) -> QuarterPoint:
        """ Lift of a path point to the quarter """
        return self.quarter.membership(self.quarter.interior_point(z))


def _half_divisor(
    config: BranchConfig, restriction: DivisorOnSigma, q: CurvePoint
) -> DivisorOnSigma:
    """ (restriction - q - q̄)/2 """
    pair = make_divisor([(q, 1), (apply_sigma(config, q), 1)])
    return restriction.subtract(pair).halved()


def side_polynomial(config: BranchConfig, lam: float, index: int) -> np.ndarray:
    """ Side polynomial over the chain interval Iᵢ, i ≠ n

    ∏_{j≤i}(z - aⱼ)(z - λ)^{n-i} for i < n,
    ∏_{j>i}(z - aⱼ)(z - λ)^{i-n} for i > n.
    """
    n = config.n
    points = config.branch_points
    if index < n:
        roots = list(points[:index]) + [lam] * (n - index)
    else:
        roots = list(points[index:]) + [lam] * (index - n)
    return npp.polyfromroots(roots).real


def boundary_member(
    config: BranchConfig, q: Union[QuarterPoint, CurvePoint]
) -> FamilyMember:
    """ Explicit h_q for q on ∂Σ″

    Over Iᵢ with i < n: P = ∏_{j≤i}(z - aⱼ)(z - λ)^{n-i}, c_w = 0; mirrored
    with ∏_{j>i} for i > n; on the central semicircle the member of the central
    division through q; over ∞ the order-n tangent hyperplane P = 1.
    """

    if isinstance(q, CurvePoint):
        point = q
        q = QuarterPoint(point, True, True, True, None)
    point = q.point

    if not q.on_boundary:
        raise ContinuationError(
            "boundary_member needs a point of ∂Σ″, got {}".format(point)
        )

    n = config.n

    if not point.is_finite:
        hyperplane = Hyperplane(np.eye(n + 1)[0], 0j)
        restriction = pullback_divisor(config, [])
        residual = _half_divisor(config, restriction, point)
        return FamilyMember(q, hyperplane, residual, "boundary-explicit")

    if abs(point.z.imag) > 1e-9 * (1.0 + abs(point.z)):
        raise ContinuationError("boundary point off the real line: {}".format(point))

    lam = float(point.z.real)
    index = config.interval_index(lam)

    if index == n:
        division = central_division(n)
        s = complex(target_coordinate(n, psi_evaluate(config, point, division)))
        hyperplane = family_member(config, division, s.real)
        fiber = psi_fiber(config, parity_parameter(n, s.real), division)
        residual = fiber.subtract(make_divisor([(point, 1)]))
        return FamilyMember(q, hyperplane, residual, "boundary-explicit")

    coeffs = side_polynomial(config, lam, index)
    hyperplane = Hyperplane(coeffs, 0j)

    chain = config.branch_points[:index] if index < n else config.branch_points[index:]
    roots = [(complex(a), 1) for a in chain]
    roots.append((complex(lam), abs(n - index)))
    restriction = pullback_divisor(config, roots)

    return FamilyMember(
        q, hyperplane, _half_divisor(config, restriction, point), "boundary-explicit"
    )


def _padded(coeffs: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size)
    out[: coeffs.size] = coeffs.real
    return out


class _TangencySystem:
    """ Coefficients of P² - γf - χ Q S² as a square real system """

    def __init__(self, config: BranchConfig, z_q: complex, fixed: int, chi: float):
        self.n_ = config.n
        self.f_ = np.asarray(config.f_coeffs, dtype=float)
        self.q_ = np.array([abs(z_q) ** 2, -2.0 * z_q.real, 1.0])
        self.fixed_ = fixed
        self.chi_ = chi
        self.size_ = 2 * self.n_ + 1

    def unpack(self, x: np.ndarray) -> Tuple[np.ndarray, float, np.ndarray]:
        n = self.n_
        p = np.insert(x[:n], self.fixed_, 1.0)
        gamma = float(x[n])
        s = x[n + 1 :]
        return p, gamma, s

    def pack(self, p: np.ndarray, gamma: float, s: np.ndarray) -> np.ndarray:
        assert p[self.fixed_] == 1.0, "INTERNAL ERROR: unnormalized seed"
        return np.concatenate([np.delete(p, self.fixed_), [gamma], s])

    def residual(self, x: np.ndarray) -> np.ndarray:
        p, gamma, s = self.unpack(x)
        value = (
            _padded(npp.polymul(p, p), self.size_)
            - gamma * _padded(self.f_, self.size_)
            - self.chi_ * _padded(npp.polymul(self.q_, npp.polymul(s, s)), self.size_)
        )
        return value

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        p, _, s = self.unpack(x)
        n = self.n_
        columns = []

        for power in range(n + 1):
            if power == self.fixed_:
                continue
            shifted = np.concatenate([np.zeros(power), 2.0 * p])
            columns.append(_padded(shifted, self.size_))

        columns.append(-_padded(self.f_, self.size_))

        qs = npp.polymul(self.q_, s)
        for power in range(s.size):
            shifted = np.concatenate([np.zeros(power), -2.0 * self.chi_ * qs])
            columns.append(_padded(shifted, self.size_))

        return np.column_stack(columns)

    def relative(self, x: np.ndarray) -> float:
        p, gamma, s = self.unpack(x)
        scale = (
            float(np.linalg.norm(npp.polymul(p, p)))
            + abs(gamma) * float(np.linalg.norm(self.f_))
            + float(np.linalg.norm(npp.polymul(self.q_, npp.polymul(s, s))))
        )
        return float(np.linalg.norm(self.residual(x))) / max(scale, 1e-300)


def _polish(
    system: _TangencySystem, x: np.ndarray, residual: float, steps: int = 3
) -> Tuple[np.ndarray, float]:
    """ Undamped Newton steps past the tolerance while the residual keeps falling """
    for _ in range(steps):
        step = np.linalg.lstsq(system.jacobian(x), -system.residual(x), rcond=None)[0]
        trial = x + step
        trial_residual = system.relative(trial)
        if not trial_residual < residual:
            break
        x, residual = trial, trial_residual
    return x, residual


def _newton(
    system: _TangencySystem, x: np.ndarray, tol: float, iterations: int = 60
) -> Tuple[np.ndarray, float]:
    """ Damped Gauss-Newton, then Levenberg-Marquardt if it stalls """

    residual = system.relative(x)

    for _ in range(iterations):
        if residual <= tol:
            return _polish(system, x, residual)

        step = np.linalg.lstsq(system.jacobian(x), -system.residual(x), rcond=None)[0]
        damping = 1.0
        while damping > 1e-4:
            trial = x + damping * step
            trial_residual = system.relative(trial)
            if trial_residual < residual:
                break
            damping *= 0.5
        else:
            break

        x, residual = trial, trial_residual

    if residual <= tol:
        return _polish(system, x, residual)

    solution = scipy_root(
        system.residual, x, jac=system.jacobian, method="lm", options={"xtol": 1e-15}
    )
    if system.relative(solution.x) < residual:
        x = solution.x
        residual = system.relative(x)

    if residual <= tol:
        return _polish(system, x, residual)
    return x, residual


def _seed_unknowns(
    config: BranchConfig, seed: FamilyMember, z_q: complex
) -> Tuple[np.ndarray, float, np.ndarray, float, int]:
    """ (P, γ, S, χ) from a solved member, and the index of the fixed P coefficient """

    g = config.genus
    hyperplane = seed.hyperplane
    fixed = int(np.argmax(np.abs(hyperplane.p_coeffs)))
    ratio = 1.0 / hyperplane.p_coeffs[fixed]
    p = (hyperplane.p_coeffs * ratio).real
    p[fixed] = 1.0
    gamma = float(((hyperplane.c_w * ratio) ** 2).real)

    roots = [point.z for point in seed.residual_divisor.expanded() if point.is_finite]
    s = _padded(npp.polyfromroots(roots).real if roots else np.ones(1), g + 1)

    q = np.array([abs(z_q) ** 2, -2.0 * z_q.real, 1.0])
    target = npp.polysub(npp.polymul(p, p), gamma * np.asarray(config.f_coeffs))
    basis = npp.polymul(q, npp.polymul(s, s))
    size = 2 * config.n + 1
    target, basis = _padded(target, size), _padded(basis, size)
    c = float(basis @ target / max(basis @ basis, 1e-300))

    chi = 1.0 if c >= 0 else -1.0
    return p, gamma, s * np.sqrt(abs(c)), chi, fixed


def _sheet_weight(
    config: BranchConfig, p: np.ndarray, gamma: float, point: CurvePoint
) -> complex:
    """ c_w = ±√γ with P(z_q) = c_w v_q """
    if config.n % 2 == 0:
        if gamma < 0:
            raise ContinuationError(
                "γ = {:.3e} < 0 gives a non-real hyperplane".format(gamma)
            )
        magnitude = complex(np.sqrt(gamma))
    else:
        if gamma > 0:
            raise ContinuationError(
                "γ = {:.3e} > 0 gives a non-real hyperplane".format(gamma)
            )
        magnitude = 1j * np.sqrt(-gamma)

    value = complex(npp.polyval(point.z, p))
    if abs(value - magnitude * point.v) <= abs(value + magnitude * point.v):
        return magnitude
    return -magnitude


def _residual_divisor(
    config: BranchConfig,
    hyperplane: Hyperplane,
    s: np.ndarray,
    q: CurvePoint,
    radius: float,
) -> DivisorOnSigma:
    """ D′ from the roots of S lifted to the sheet v = P(z)/c_w """

    g = config.genus
    entries: List[Tuple[CurvePoint, int]] = []
    finite = 0
    c_w = hyperplane.c_w

    if g > 0:
        limit = 10.0 * radius * (1.0 + abs(q.z))
        mirror = apply_sigma(config, q)

        for root, multiplicity in roots_with_multiplicity(s, radius):
            if abs(root) >= ROOT_INFINITY:
                continue
            seed = complex(npp.polyval(root, hyperplane.p_coeffs)) / c_w
            point = lift_point(config, root, seed=seed)
            if min(point_distance(point, q), point_distance(point, mirror)) <= limit:
                raise CuspConfigurationError(
                    "D′ contains a point over z = {} next to q = {}".format(root, q.z)
                )
            entries.append((point, multiplicity))
            finite += multiplicity

    leading = hyperplane.p_coeffs[config.n]
    sign = 1 if abs(leading - c_w) < abs(leading + c_w) else -1
    entries.append((CurvePoint.infinity(sign), g - finite))

    return make_divisor(entries)


def _conic_member(config: BranchConfig, q: QuarterPoint) -> FamilyMember:
    """ n = 1: the hyperplane through q and q̄ """
    point = q.point
    mirror = apply_sigma(config, point)
    rows = np.array([[1.0, point.z, -point.v], [1.0, mirror.z, -mirror.v]])
    vector = np.linalg.svd(rows)[2][-1].conjugate()
    vector = vector / vector[int(np.argmax(np.abs(vector[:2])))]
    hyperplane = Hyperplane(vector[:2].real, 1j * vector[2].imag)
    return FamilyMember(q, hyperplane, make_divisor([]), "interior-continued")


def interior_solve(
    config: BranchConfig,
    q: QuarterPoint,
    seed: FamilyMember,
    tol: float = 1e-10,
    radius: float = 1e-5,
    lattice: Optional[PeriodLattice] = None,
    abel_tol: float = 1e-7,
) -> FamilyMember:
    """ Newton solve for h_q at an interior point, seeded by a nearby member

    Raises ContinuationError when c_w vanishes, and, given a lattice, when
    2𝔞(D′) + β(q) is farther than abel_tol from the lattice.
    """

    point = q.point
    assert point.is_finite, "INTERNAL ERROR: interior point at infinity"

    if config.n == 1:
        return _conic_member(config, q)

    p, gamma, s, chi, fixed = _seed_unknowns(config, seed, point.z)
    system = _TangencySystem(config, point.z, fixed, chi)

    x, residual = _newton(system, system.pack(p, gamma, s), tol)

    if not residual <= tol or not np.all(np.isfinite(x)):
        raise ContinuationError(
            "Newton did not converge at z = {}: last residual {:.3e}".format(
                point.z, residual
            )
        )

    p, gamma, s = system.unpack(x)
    c_w = _sheet_weight(config, p, gamma, point)
    hyperplane = Hyperplane(p, c_w)
    if passes_through_vertex(hyperplane):
        raise ContinuationError(
            "c_w = 0 at the interior point z = {}".format(point.z)
        )

    residual_divisor = _residual_divisor(config, hyperplane, s, point, radius)
    member = FamilyMember(q, hyperplane, residual_divisor, "interior-continued")
    if lattice is not None:
        check_doubling(lattice, member, abel_tol)
    return member


def slice_path(
    quarter: Quarter, target: complex, step: Optional[float] = None
) -> SlicePath:
    """ Path from a central anchor: up to a safe height, across, then down to target

    The descent is geometric in the height so that points close to the real
    line are approached with proportionally small steps.
    """

    config = quarter.config
    n = config.n
    orientation = quarter.orientation
    left, right = config.branch_points[n - 1], config.branch_points[n]
    width = right - left

    if step is None:
        step = 0.05 * config.scale

    target = complex(target)
    height = orientation * target.imag
    if height <= 0:
        raise ContinuationError(
            "target {} is not interior to the quarter".format(target)
        )

    anchor = min(max(target.real, left + 0.1 * width), right - 0.1 * width)
    top = max(height, config.scale)

    points: List[complex] = [complex(anchor)]

    count = int(np.ceil(top / step))
    for y in np.linspace(0.0, top, count + 1)[1:]:
        points.append(complex(anchor, orientation * y))

    count = int(np.ceil(abs(target.real - anchor) / step))
    for x in np.linspace(anchor, target.real, count + 1)[1:]:
        points.append(complex(x, orientation * top))

    y = top
    while y > height:
        y = max(height, y - min(step, 0.2 * y))
        points.append(complex(target.real, orientation * y))

    return SlicePath(quarter, tuple(points))


def continue_along(
    config: BranchConfig,
    path: SlicePath,
    tol: float = 1e-10,
    radius: float = 1e-5,
    jump: float = 0.25,
    lattice: Optional[PeriodLattice] = None,
    abel_tol: float = 1e-7,
) -> FamilyMember:
    """ Solve along the path with step halving; returns the member at the end

    Given a lattice, the member at the end must satisfy the doubling relation.
    """

    member = boundary_member(config, path.anchor)
    current = path.points[0]
    minimum = path.min_step * config.scale

    pending = list(reversed(path.points[1:]))
    while pending:
        z = pending[-1]
        try:
            q = path.quarter_point(z)
            candidate = interior_solve(config, q, member, tol, radius)
            moved = candidate.hyperplane.distance(member.hyperplane)
            if moved > jump:
                raise ContinuationError(
                    "member jumped by {:.3e} between {} and {}".format(
                        moved, current, z
                    )
                )
        except ContinuationError as error:
            if abs(z - current) < minimum:
                raise ContinuationError(
                    "step below {:.1e} at z = {}: {}".format(minimum, z, error)
                )
            pending.append(0.5 * (current + z))
            continue

        pending.pop()
        member, current = candidate, z

    if lattice is not None:
        check_doubling(lattice, member, abel_tol)
    return member


def solve_member(
    config: BranchConfig,
    quarter: Quarter,
    z: Extended,
    tol: float = 1e-10,
    radius: float = 1e-5,
    step: Optional[float] = None,
    lattice: Optional[PeriodLattice] = None,
    abel_tol: float = 1e-7,
) -> FamilyMember:
    """ h_q for q over z in the closed half plane of the quarter """

    if is_infinite(z):
        return boundary_member(config, quarter.boundary_parametrization(z))

    z = complex(z)
    if abs(z.imag) <= 1e-12 * (1.0 + abs(z)):
        return boundary_member(config, quarter.boundary_parametrization(z.real))

    if config.n == 1:
        q = quarter.membership(quarter.interior_point(z))
        return _conic_member(config, q)

    path = slice_path(quarter, z, step)
    return continue_along(
        config, path, tol, radius, lattice=lattice, abel_tol=abel_tol
    )


def _other_sheet(q: QuarterPoint) -> QuarterPoint:
    """ τ(q), tagged outside Σ′ unless τ fixes q """
    point = q.point.other_sheet()
    if point_distance(point, q.point) == 0:
        return q
    return QuarterPoint(point, False, False, False, q.circle)


def rotate_member(member: FamilyMember, phase: complex) -> FamilyMember:
    """ Residual circle action (p, α, β) ↦ (p, α/t, βt)

    A total phase of -1 passes through the centre again and gives the τ-image
    h: c_w ↦ -c_w with q and D′ mapped by τ, recorded at phase 1.
    """
    phase = complex(phase)
    if phase == 1:
        return member

    total = member.phase * phase
    if abs(total + 1) <= 1e-14:
        hyperplane = attr.evolve(member.hyperplane, c_w=-member.hyperplane.c_w)
        residual = make_divisor(
            [(point.other_sheet(), m) for point, m in member.residual_divisor.entries]
        )
        return FamilyMember(_other_sheet(member.q), hyperplane, residual, "rotated")
    if abs(total - 1) <= 1e-14:
        total = 1 + 0j

    return attr.evolve(member, phase=total, provenance="rotated")


def doubling_residual(lattice: PeriodLattice, member: FamilyMember) -> float:
    """ Distance of 2𝔞(D′) + β(q) to the lattice """
    doubled = 2.0 * abel_jacobi(lattice, member.residual_divisor).value
    return lattice.distance(doubled + beta(lattice, member.q.point).value)


def check_doubling(
    lattice: PeriodLattice, member: FamilyMember, abel_tol: float = 1e-7
) -> None:
    """ Raise ContinuationError unless 2𝔞(D′) + β(q) ≡ 0 in the lattice """
    residual = doubling_residual(lattice, member)
    if not residual <= abel_tol:
        raise ContinuationError(
            "2𝔞(D′) + β(q) is {:.3e} off the lattice at z = {}".format(
                residual, member.q.point.z
            )
        )


def restriction_defect(
    config: BranchConfig, member: FamilyMember, radius: float = 1e-5
) -> float:
    """ Distance between h|_Σ and q + q̄ + 2D′ """
    expected = member.expected_restriction(config)
    return member.restriction(config, radius).distance(expected)


def slice_injectivity_check(
    members: Sequence[FamilyMember], phase_count: int = 64, threshold: float = 1e-6
) -> Report:
    """ Rotated members never coincide except for the same q and t = 1 """

    phases = np.exp(2j * np.pi * np.arange(phase_count) / phase_count)
    worst = np.inf
    detail = None
    checks = []

    for first_index, first in enumerate(members):
        for second_index, second in enumerate(members):
            target = second.lift()
            same = first_index == second_index
            for k, phase in enumerate(phases):
                if same and k == 0:
                    continue
                rotated = rotate_member(first, phase).lift()
                distance = projective_distance(rotated, target)
                if distance < worst:
                    worst = distance
                    detail = "members {} and {} at phase {}/{}".format(
                        first_index, second_index, k, phase_count
                    )

    checks.append(
        CheckResult(
            "no coincidence of rotated members",
            bool(worst > threshold),
            float(worst),
            threshold,
            detail,
        )
    )

    if members:
        first = members[0]
        identity = projective_distance(first.lift(), rotate_member(first, 1.0).lift())
        checks.append(check_below("phase 1 is the identity", identity, 1e-14))
        flipped = rotate_member(first, -1.0)
        checks.append(
            CheckResult(
                "phase -1 keeps the centre", flipped.through_center(), None, None
            )
        )
        if len(phases) > 1:
            quarter_turn = rotate_member(first, 1j)
            keeps = quarter_turn.through_center()
            checks.append(
                CheckResult(
                    "phase i leaves the centre",
                    not keeps or first.hyperplane.c_w == 0,
                    None,
                    None,
                )
            )

    return Report("slice injectivity", checks)
