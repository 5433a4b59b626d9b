""" Named verification suites for one branch configuration """

import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import attr
import numpy as np
from numpy.polynomial import polynomial as npp
from numpy.random import default_rng

from .analysis import FamilySweep, quarter_grid
from .classifier import (
    GenusDropError,
    classify_member,
    genus_drop_check,
    non_real_count,
    records_sigma_invariant,
    trace_transitions,
)
from .configuration import RunConfiguration
from .curve import (
    BranchConfig,
    Quarter,
    apply_sigma,
    apply_tau,
    arc_samples,
    classify_circle,
    is_central,
    is_infinite,
    lift_point,
    make_quarter,
    point_distance,
)
from .family import (
    FamilyMember,
    boundary_member,
    restriction_defect,
    slice_injectivity_check,
    solve_member,
)
from .jacobian import (
    PeriodLattice,
    abel_residual,
    boundary_samples,
    beta,
    doubling_candidates,
    seifert_lift,
)
from .pencils import (
    all_divisions,
    central_division,
    family_member,
    swap_parameter,
    tangency_coeffs,
    verify_circle_images,
)
from .projective import (
    exact_identity_holds,
    minitwistor_equation,
    passes_through_vertex,
    projective_distance,
    restrict_hyperplane,
    sigma_invariant,
)
from .results import CheckResult, Report, check_below
from .twistor_lines import (
    annihilation_defect,
    axis_orders,
    central_line_image,
    chain_line,
    chain_modulus,
    generic_line,
    image_of_chain_line,
    image_of_generic_line,
    image_of_invariant_line,
    invariant_line,
    rotate_line,
    sample_image,
    solve_lambda,
)

SUITES = (
    "curve",
    "projective",
    "pencils",
    "jacobian",
    "family",
    "twistor",
    "classifier",
    "transitions",
    "seed",
)

# Errors a failing property may surface as
CheckFailure = (RuntimeError, ValueError, ArithmeticError)


def _worst(values: Sequence[float]) -> float:
    return float(max(values)) if len(values) else 0.0


def _guarded(name: str, check: Callable[[], CheckResult]) -> CheckResult:
    """ Run a check, turning a raised error into a failed record """
    try:
        return check()
    except CheckFailure as error:
        detail = "{}: {}".format(type(error).__name__, error)
        return CheckResult(name, False, detail=detail)


def _relative(first: np.ndarray, second: np.ndarray) -> float:
    size = max(first.size, second.size)
    left = np.zeros(size, dtype=complex)
    right = np.zeros(size, dtype=complex)
    left[: first.size] = first
    right[: second.size] = second
    scale = 1.0 + float(np.max(np.abs(left))) + float(np.max(np.abs(right)))
    return float(np.max(np.abs(left - right))) / scale


def _symmetric(config: BranchConfig, tol: float = 1e-12) -> bool:
    points = config.points
    return bool(np.max(np.abs(points + points[::-1])) <= tol * config.scale)


@attr.s(auto_attribs=True, frozen=True, slots=True)
class VerificationResult:
    """ Reports of all suites that were run """

    reports: List[Report] = attr.Factory(list)

    def __bool__(self) -> bool:
        """ True when every suite passed """
        return all(self.reports)

    def failures(self) -> List[CheckResult]:
        """ Failed checks over all suites """
        return [check for report in self.reports for check in report.failures()]

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        return {
            "passed": bool(self),
            "suites": [report.to_dict() for report in self.reports],
        }


class Verifier:
    """ Run the property suites of every module against one configuration """

    configuration_: RunConfiguration
    config_: BranchConfig
    quarter_: Quarter
    sweep_: FamilySweep
    members_: Optional[List[FamilyMember]] = None

    def __init__(self, configuration: RunConfiguration):
        self.configuration_ = configuration
        self.config_ = configuration.branch_config()
        self.quarter_ = make_quarter(self.config_, configuration.orientation)
        self.sweep_ = FamilySweep(configuration)

    @property
    def lattice(self) -> PeriodLattice:
        """ The period lattice shared by the suites """
        return self.sweep_.lattice()

    def _status(self, text: str) -> None:
        if self.configuration_.verbose:
            print(text, file=sys.stderr, flush=True)

    def _samples(self, count: int) -> np.ndarray:
        """ Deterministic complex sample abscissae around the branch points """
        config = self.config_
        rng = default_rng(2 * config.n)
        points = config.points
        width = points[-1] - points[0] + 2.0
        real = points[0] - 1.0 + width * rng.random(count)
        imag = config.scale * (rng.random(count) - 0.5)
        return real + 1j * imag

    # Curve

    def _f_matches_points(self) -> CheckResult:
        config = self.config_
        defects = []
        for z in self._samples(32):
            product = config.product(z)
            defects.append(abs(config.evaluate(z) - product) / (1.0 + abs(product)))
        return check_below(
            "f coefficients match the branch points",
            _worst(defects),
            self.configuration_.tolerances.curve,
        )

    def _involutions(self) -> CheckResult:
        config = self.config_
        worst = 0.0
        for z in self._samples(16):
            point = lift_point(config, z)
            sigma = apply_sigma(config, point)
            tau = apply_tau(config, point)
            worst = max(
                worst,
                point_distance(apply_sigma(config, sigma), point),
                point_distance(apply_tau(config, tau), point),
                point_distance(apply_sigma(config, tau), apply_tau(config, sigma)),
                sigma.residual(config),
            )
        return check_below("σ and τ are commuting involutions of Σ", worst, 1e-12)

    def _circle_flavors(self) -> CheckResult:
        config = self.config_
        worst = 0.0
        for index in range(2 * config.n):
            circle = classify_circle(config, index)
            for x in arc_samples(config, index, 8):
                if is_infinite(x):
                    continue
                point = lift_point(config, x)
                image = apply_sigma(config, point)
                if not circle.is_real:
                    image = apply_tau(config, image)
                scale = 1.0 + abs(point.v)
                worst = max(worst, point_distance(image, point) / scale)
        return check_below("circles are fixed by σ or στ", worst, 1e-12)

    def _quarter_tags(self) -> CheckResult:
        config = self.config_
        quarter = self.quarter_
        seed = quarter.seed_point
        inside = quarter.membership(seed).interior
        sigma_out = not quarter.membership(apply_sigma(config, seed)).in_quarter
        tau_out = not quarter.membership(apply_tau(config, seed)).in_quarter
        boundary = all(
            quarter.membership(quarter.boundary_parametrization(x).point).on_boundary
            for index in range(1, 2 * config.n)
            for x in arc_samples(config, index, 4)
        )
        passed = inside and sigma_out and tau_out and boundary
        return CheckResult(
            "quarter is a fundamental domain of ⟨σ, τ⟩",
            passed,
            detail=None
            if passed
            else "seed {}, σ {}, τ {}, boundary {}".format(
                inside, sigma_out, tau_out, boundary
            ),
        )

    def curve_suite(self) -> Report:
        """ Branch data, involutions, circle flavours and the quarter """
        checks = [
            ("f coefficients match the branch points", self._f_matches_points),
            ("σ and τ are commuting involutions of Σ", self._involutions),
            ("circles are fixed by σ or στ", self._circle_flavors),
            ("quarter is a fundamental domain of ⟨σ, τ⟩", self._quarter_tags),
        ]
        return Report("curve", [_guarded(name, check) for name, check in checks])

    # Projective model

    def _float_identity(self) -> CheckResult:
        config = self.config_
        n = config.n
        equation = minitwistor_equation(config)
        worst = 0.0
        for k, z in enumerate(self._samples(16)):
            u = 0.8 * np.exp(1j * k)
            coordinates = np.array([u ** (n - m) * z ** m for m in range(n + 1)])
            product = complex(np.prod(z - config.points * u))
            value = equation.evaluate(coordinates)
            worst = max(worst, abs(value - product) / (1.0 + abs(product)))
        return check_below("Q(uⁿ, …, zⁿ) = ∏(z - aᵢu)", worst, 1e-12)

    def _family_identity(self) -> CheckResult:
        config = self.config_
        worst = 0.0
        for division in all_divisions(config.n):
            for s in np.geomspace(0.1, 10.0, 20):
                member = family_member(config, division, s)
                c_w = member.c_w
                left = npp.polysub(
                    npp.polymul(member.p_coeffs, member.p_coeffs),
                    (c_w * c_w) * config.f_coeffs,
                )
                square = tangency_coeffs(config, division, complex(c_w))
                worst = max(worst, _relative(left, npp.polymul(square, square)))
        return check_below("P² - c_w²f = ((A - t²B)/2)²", worst, 1e-12)

    def _division_swap(self) -> CheckResult:
        config = self.config_
        n = config.n
        worst = 0.0
        for division in all_divisions(n):
            for s in np.geomspace(0.1, 10.0, 20):
                first = family_member(config, division, s)
                other = swap_parameter(n, s)
                other_s = complex(other).real
                second = family_member(config, division.swapped(), other_s)
                worst = max(worst, first.distance(second))
        return check_below("division swap gives the same members", worst, 1e-12)

    def _restriction_shape(self) -> CheckResult:
        config = self.config_
        radius = self.configuration_.tolerances.root_cluster
        failures = 0
        for division in all_divisions(config.n):
            for s in (0.3, 1.0, 2.5):
                divisor = restrict_hyperplane(
                    family_member(config, division, s), config, radius
                )
                if divisor.degree != 2 * config.n or not sigma_invariant(
                    divisor, config, 1e-6
                ):
                    failures += 1
        return check_below(
            "real members restrict to σ-invariant divisors of degree 2n", failures, 0
        )

    def projective_suite(self) -> Report:
        """ Minitwistor equation and the pencil identity """
        exact = _guarded(
            "exact minitwistor identity",
            lambda: CheckResult(
                "exact minitwistor identity",
                exact_identity_holds(self.config_)
                and exact_identity_holds(self.config_, "extreme"),
            ),
        )
        return Report(
            "projective",
            [
                exact,
                _guarded("Q(uⁿ, …, zⁿ) = ∏(z - aᵢu)", self._float_identity),
                _guarded("P² - c_w²f = ((A - t²B)/2)²", self._family_identity),
                _guarded(
                    "division swap gives the same members", self._division_swap
                ),
                _guarded(
                    "real members restrict to σ-invariant divisors of degree 2n",
                    self._restriction_shape,
                ),
            ],
        )

    # Pencils

    def pencil_suite(self) -> Report:
        """ Images of the circles under ψ """
        try:
            report = verify_circle_images(
                self.config_, self.configuration_.sweep.circle_samples
            )
        except CheckFailure as error:
            return Report(
                "pencils", [CheckResult("circle images", False, detail=str(error))]
            )
        return Report("pencils", report.checks)

    # Jacobian

    def _central_members(self) -> List:
        config = self.config_
        out = []
        divisions = all_divisions(config.n)
        count = max(2, 50 // len(divisions))
        for division in divisions:
            for s in np.geomspace(0.2, 5.0, count):
                out.append(family_member(config, division, s))
        return out

    def _abel_theorem(self) -> CheckResult:
        lattice = self.lattice
        radius = self.configuration_.tolerances.root_cluster
        hyperplanes = self._central_members()
        for sample in boundary_samples(self.quarter_, 4):
            hyperplanes.append(boundary_member(self.config_, sample).hyperplane)
        residuals = [abel_residual(lattice, h, radius) for h in hyperplanes]
        return check_below(
            "Abel's theorem on {} members".format(len(residuals)),
            _worst(residuals),
            self.configuration_.tolerances.abel,
        )

    def _ramification_halves(self) -> CheckResult:
        lattice = self.lattice
        worst = _worst(
            [
                lattice.distance(2.0 * lattice.ramification_value(index))
                for index in range(1, 2 * self.config_.n + 1)
            ]
        )
        return check_below(
            "2𝔞(rᵢ) lies in the lattice",
            worst,
            self.configuration_.tolerances.abel,
        )

    def _seifert_closure(self) -> CheckResult:
        tol = self.configuration_.tolerances.abel
        samples = boundary_samples(self.quarter_, 8)
        scale = self.config_.scale
        surface = seifert_lift(
            self.lattice,
            samples,
            tol=tol,
            quarter=self.quarter_,
            heights=[0.5 * scale, scale],
        )
        interior = [
            self.lattice.distance(
                2.0 * value + beta(self.lattice, sample.point).value
            )
            for sample, value in zip(surface.interior, surface.interior_lifts)
        ]
        worst = max(
            surface.closure_defect,
            _worst(list(surface.consistency)),
            _worst(interior),
        )
        return check_below("boundary lift closes and matches 𝔞(D′)", worst, tol)

    def jacobian_suite(self) -> Report:
        """ Periods, Riemann relation, Abel's theorem and the boundary lift """
        return Report(
            "jacobian",
            [
                _guarded(
                    "Riemann relation",
                    lambda: check_below(
                        "Riemann relation", self.lattice.riemann_residual(), 1e-8
                    ),
                ),
                _guarded(
                    "real generators are independent",
                    lambda: check_below(
                        "real generators are independent",
                        self.lattice.real_rank_condition(),
                        1e8,
                    ),
                ),
                _guarded("2𝔞(rᵢ) lies in the lattice", self._ramification_halves),
                _guarded("Abel's theorem", self._abel_theorem),
                _guarded(
                    "boundary lift closes and matches 𝔞(D′)", self._seifert_closure
                ),
                _guarded("2ᵍ real doubling candidates", self._real_candidates),
            ],
        )

    def _real_candidates(self) -> CheckResult:
        lattice = self.lattice
        genus = lattice.genus
        target = beta(lattice, self.quarter_.seed_point)
        real = doubling_candidates(lattice, target, real_only=True)
        every = doubling_candidates(lattice, target)
        passed = len(real) == 2 ** genus and len(every) == 4 ** genus
        return CheckResult(
            "2ᵍ real doubling candidates",
            passed,
            detail="{} real of {}".format(len(real), len(every)),
        )

    # Family

    def _interior_targets(self) -> List[complex]:
        count = self.configuration_.sweep.interior_samples
        density = max(2, int(np.ceil(np.sqrt(count))))
        return quarter_grid(self.quarter_, density, boundary=False)[:count]

    def _interior_records(self) -> List[CheckResult]:
        config = self.config_
        tolerances = self.configuration_.tolerances
        records = self.sweep_.sweep(
            self._interior_targets(), self.configuration_.sweep.workers
        )

        self.members_ = [
            record.member for record in records if record.member is not None
        ]
        failed = [record for record in records if not record]

        checks = [
            CheckResult(
                "interior members solved",
                not failed,
                float(len(failed)),
                0.0,
                failed[0].error if failed else None,
            )
        ]

        solved = [record for record in records if record]
        checks.append(
            check_below(
                "doubling relation 2𝔞(D′) + β(q) ≡ 0",
                _worst([record.doubling_residual for record in solved]),
                tolerances.abel,
            )
        )
        checks.append(
            check_below(
                "h_q|Σ = q + q̄ + 2D′",
                _worst([record.restriction_defect for record in solved]),
                tolerances.match,
            )
        )
        degrees = [record.member.residual_divisor.degree for record in solved]
        checks.append(
            CheckResult(
                "deg D′ = n - 1",
                all(degree == config.n - 1 for degree in degrees),
                detail="degrees {}".format(sorted(set(degrees))),
            )
        )
        checks.append(
            CheckResult(
                "interior genus drop is g",
                all(record.genus_drop == config.genus for record in solved),
            )
        )

        if config.n == 2:
            central = all(
                len(record.singularities) == 1
                and record.singularities[0].kind == "node-real"
                and is_central(config, record.singularities[0].circle)
                for record in solved
            )
            checks.append(
                CheckResult("g = 1 members have one central real node", central)
            )

        return checks

    def _boundary_anchors(self) -> List[Tuple[str, float]]:
        """ Anchors on the central semicircle and on both adjacent side intervals """
        config = self.config_
        n = config.n
        points = config.branch_points
        left, right = points[n - 1], points[n]
        width = right - left
        anchors = [
            ("central", left + fraction * width) for fraction in (0.25, 0.5, 0.75)
        ]
        lower = points[n - 2] if n >= 2 else left - width
        upper = points[n + 1] if n >= 2 else right + width
        anchors.append(("side", 0.5 * (lower + left)))
        anchors.append(("side", 0.5 * (right + upper)))
        return anchors

    def _boundary_consistency(self) -> CheckResult:
        config = self.config_
        tolerances = self.configuration_.tolerances
        offset = 1e-4
        # P converges quadratically in the height, c_w linearly
        p_limit = max(tolerances.match, 1e3 * offset * offset)
        worst_p = 0.0
        worst_full = 0.0
        vertex_failures = []
        for stratum, x in self._boundary_anchors():
            edge = self.quarter_.boundary_parametrization(x)
            anchor = boundary_member(config, edge)
            if (stratum == "side") != passes_through_vertex(anchor.hyperplane):
                vertex_failures.append(x)
            z = complex(x, self.quarter_.orientation * offset)
            interior = solve_member(
                config, self.quarter_, z, tolerances.newton, tolerances.root_cluster
            )
            worst_p = max(
                worst_p,
                projective_distance(
                    interior.hyperplane.p_coeffs, anchor.hyperplane.p_coeffs
                ),
            )
            full = interior.hyperplane.distance(anchor.hyperplane)
            worst_full = max(worst_full, full)
        passed = (
            worst_p <= p_limit
            and worst_full <= 10 * offset
            and not vertex_failures
        )
        detail = "full distance {:.3e}".format(worst_full)
        if vertex_failures:
            detail += "; c_w = 0 exactly on the side intervals fails at x = {}".format(
                ", ".join("{:.6g}".format(x) for x in vertex_failures)
            )
        return CheckResult(
            "interior members approach the boundary members",
            passed,
            worst_p,
            p_limit,
            detail,
        )

    def _boundary_members(self) -> CheckResult:
        config = self.config_
        radius = self.configuration_.tolerances.root_cluster
        worst = 0.0
        wrong = 0
        for sample in boundary_samples(self.quarter_, 4):
            member = boundary_member(config, sample)
            worst = max(worst, restriction_defect(config, member, radius))
            if member.residual_divisor.degree != config.n - 1:
                wrong += 1
            try:
                genus_drop_check(config, member, radius)
            except GenusDropError:
                wrong += 1
        return CheckResult(
            "boundary members are evenly tangent",
            worst <= self.configuration_.tolerances.match and wrong == 0,
            worst,
            self.configuration_.tolerances.match,
            "{} degree or genus mismatches".format(wrong),
        )

    def family_suite(self) -> Report:
        """ Boundary members, interior continuation and slice injectivity """
        checks = [
            _guarded("boundary members are evenly tangent", self._boundary_members)
        ]

        try:
            checks.extend(self._interior_records())
        except CheckFailure as error:
            failed = CheckResult("interior members solved", False, detail=str(error))
            checks.append(failed)

        checks.append(
            _guarded(
                "interior members approach the boundary members",
                self._boundary_consistency,
            )
        )

        members = (self.members_ or [])[:8]
        checks.extend(
            slice_injectivity_check(members, self.configuration_.sweep.phases).checks
        )
        return Report("family", checks)

    # Twistor lines

    def _lambda_round_trip(self) -> List[CheckResult]:
        config = self.config_
        points = config.points
        worst = 0.0
        monotone = True
        for index in range(2 * config.n + 1):
            reach = 4.0 * config.scale
            lower = points[index - 1] if index > 0 else points[0] - reach
            upper = points[index] if index < 2 * config.n else points[-1] + reach
            grid = lower + (upper - lower) * (np.arange(100) + 0.5) / 100
            moduli = np.array([chain_modulus(config, index, lam) for lam in grid])
            monotone = monotone and bool(np.all(np.diff(moduli) < 0))
            for lam, modulus in zip(grid, moduli):
                found = solve_lambda(config, index, modulus)
                worst = max(worst, abs(found - lam) / (1.0 + abs(lam)))
        return [
            check_below("solve_lambda inverts |cᵢ|²", worst, 1e-10),
            CheckResult("|cᵢ|² decreases along each interval", monotone),
        ]

    def _chain_images(self) -> CheckResult:
        config = self.config_
        worst = 0.0
        orders = True
        for index in range(2 * config.n + 1):
            if index == config.n:
                continue
            for c in (0.5, 1.0 + 1.0j, 3.0):
                line = chain_line(config, index, c)
                image = image_of_chain_line(config, index, line.lam)
                rows = sample_image(config, line)
                worst = max(
                    worst,
                    annihilation_defect(rows, image.lift),
                    line.product_defect(config),
                    line.reality_defect(),
                )
                orders = orders and image.conic_multiplicity == abs(config.n - index)
        for index in range(1, 2 * config.n + 1):
            line = invariant_line(config, index)
            image = image_of_invariant_line(config, index)
            rows = sample_image(config, line)
            worst = max(worst, annihilation_defect(rows, image.lift))
        orders = orders and all(order > 0 for _, order in axis_orders(config))
        return CheckResult(
            "chain and invariant lines map into their image hyperplanes",
            worst <= 1e-9 and orders,
            worst,
            1e-9,
            None if orders else "conic multiplicity differs from |n - i|",
        )

    def _central_images(self) -> CheckResult:
        config = self.config_
        real = all(central_line_image(config, kappa).real for kappa in (0.5, 1.0, 2.0))
        split = not central_line_image(config, 1.0 + 0.5j).real
        return CheckResult(
            "central line images are real iff κ is real", real and split
        )

    def _generic_lines(self) -> List[CheckResult]:
        config = self.config_
        equation = minitwistor_equation(config)
        rng = default_rng(7)
        points = config.points
        radius = self.configuration_.tolerances.root_cluster

        on_model = 0.0
        sections = 0.0
        ratio = 0.0
        shapes = 0
        drops = 0
        interior = 0
        rotation = 0.0
        count = self.configuration_.sweep.generic_lines

        for _ in range(count):
            p = complex(rng.uniform(0.2, 1.5), rng.uniform(-1.5, 1.5))
            q = float(rng.uniform(points[0] - 1.0, points[-1] + 1.0))
            line = generic_line(config, p, q)
            sections = max(sections, line.product_defect(config), line.reality_defect())
            rows = sample_image(config, line)
            on_model = max(on_model, _worst([equation.residual(row) for row in rows]))
            try:
                image = image_of_generic_line(
                    config, line, self.quarter_, radius=radius
                )
            except CheckFailure:
                continue
            shapes += 1
            ratio = max(ratio, image.singular_ratio)
            interior += int(image.q.interior)
            try:
                genus_drop_check(config, image.hyperplane, radius)
                drops += 1
                turned = image_of_generic_line(
                    config, rotate_line(line, 0.7), self.quarter_, radius=radius
                )
            except CheckFailure:
                rotation = np.inf
                continue
            rotation = max(rotation, turned.hyperplane.distance(image.hyperplane))

        return [
            check_below("generic lines are real sections", sections, 1e-10),
            check_below("images lie on the minitwistor space", on_model, 1e-10),
            check_below("images span a unique hyperplane", ratio, 1e-8),
            CheckResult(
                "restrictions have shape q + q̄ + 2D′",
                shapes == count,
                float(count - shapes),
                0.0,
            ),
            CheckResult("q lies in the open quarter", interior == shapes),
            CheckResult("genus drops add up", drops == shapes),
            check_below("rotated lines give the same member", rotation, 1e-8),
        ]

    def twistor_suite(self) -> Report:
        """ Chain, invariant, central and generic twistor lines """
        checks: List[CheckResult] = []
        for name, block in (
            ("solve_lambda inverts |cᵢ|²", self._lambda_round_trip),
            ("generic lines", self._generic_lines),
        ):
            try:
                checks.extend(block())
            except CheckFailure as error:
                checks.append(CheckResult(name, False, detail=str(error)))
        checks.append(
            _guarded(
                "chain and invariant lines map into their image hyperplanes",
                self._chain_images,
            )
        )
        checks.append(
            _guarded(
                "central line images are real iff κ is real", self._central_images
            )
        )
        return Report("twistor", checks)

    # Classifier

    def _left_end(self) -> CheckResult:
        config = self.config_
        member = family_member(config, central_division(config.n), 0.0)
        radius = self.configuration_.tolerances.root_cluster
        records = classify_member(config, member, radius)
        located = sorted(record.point.z.real for record in records)
        expected = list(config.branch_points[: config.n])
        passed = (
            len(records) == config.n
            and all(record.kind == "node-real" for record in records)
            and np.allclose(located, expected, atol=1e-8)
        )
        return CheckResult("h_L has n real nodes at r₁..rₙ", passed)

    def _member_records(self) -> CheckResult:
        config = self.config_
        radius = self.configuration_.tolerances.root_cluster
        mismatched = 0
        for division in all_divisions(config.n):
            for s in (0.3, 0.9, 2.0):
                member = family_member(config, division, s)
                records = classify_member(config, member, radius)
                if not records_sigma_invariant(records):
                    mismatched += 1
                if genus_drop_check(config, member, radius) != config.n:
                    mismatched += 1
        return check_below(
            "real members: σ-paired records and genus drop n", mismatched, 0
        )

    def classifier_suite(self) -> Report:
        """ Singularity records of real members """
        return Report(
            "classifier",
            [
                _guarded("h_L has n real nodes at r₁..rₙ", self._left_end),
                _guarded(
                    "real members: σ-paired records and genus drop n",
                    self._member_records,
                ),
            ],
        )

    # Transitions

    def _division_traces(self) -> List[CheckResult]:
        config = self.config_
        samples = self.configuration_.sweep.trace_samples
        checks = []
        for division in all_divisions(config.n):
            trace = trace_transitions(config, division, samples=samples)
            counts = [regime.non_real for regime in trace.regimes]
            steps = all(abs(b - a) == 2 for a, b in zip(counts[:-1], counts[1:]))
            brackets = all(
                non_real_count(config, division, critical.bracket[0])
                != non_real_count(config, division, critical.bracket[1])
                for critical in trace.criticals
            )
            checks.append(
                CheckResult(
                    "trace {}".format(division),
                    trace.endpoints_real and steps and brackets,
                    float(len(trace.criticals)),
                    None,
                    "endpoints real {}, regime steps {}, brackets {}".format(
                        trace.endpoints_real, steps, brackets
                    ),
                )
            )

            if division == central_division(config.n) and _symmetric(config):
                values = [critical.s for critical in trace.criticals]
                paired = all(
                    min(abs(u * w - 1.0) for w in values) <= 1e-8 for u in values
                )
                checks.append(
                    CheckResult("central criticals come in (u, 1/u) pairs", paired)
                )
                if config.n == 2:
                    checks.append(
                        CheckResult(
                            "g = 1 central division has no criticals", not values
                        )
                    )
        return checks

    def transition_suite(self) -> Report:
        """ Discriminant traces along every division """
        try:
            return Report("transitions", self._division_traces())
        except CheckFailure as error:
            return Report(
                "transitions", [CheckResult("traces", False, detail=str(error))]
            )

    # Seed

    def _seed_swap(self) -> CheckResult:
        config = self.config_
        tolerances = self.configuration_.tolerances
        upper = make_quarter(config, 1)
        lower = make_quarter(config, -1)
        points = config.points
        worst = 0.0
        for x in (points[0] - 0.5, 0.5 * (points[0] + points[-1]), points[-1] + 0.5):
            z = complex(x, 0.5 * config.scale)
            first = solve_member(config, upper, z, tolerances.newton).hyperplane
            mirrored = solve_member(config, lower, z.conjugate(), tolerances.newton)
            second = mirrored.hyperplane
            flipped = attr.evolve(second, c_w=-second.c_w)
            worst = max(worst, min(first.distance(second), first.distance(flipped)))
        return check_below(
            "conjugate seed gives the same members", worst, tolerances.match
        )

    def seed_suite(self) -> Report:
        """ Independence of the seed convention """
        return Report(
            "seed",
            [_guarded("conjugate seed gives the same members", self._seed_swap)],
        )

    def verify(self, suites: Optional[Sequence[str]] = None) -> VerificationResult:
        """ Run the named suites (all by default) """

        if suites is None:
            suites = SUITES

        runners = {
            "curve": self.curve_suite,
            "projective": self.projective_suite,
            "pencils": self.pencil_suite,
            "jacobian": self.jacobian_suite,
            "family": self.family_suite,
            "twistor": self.twistor_suite,
            "classifier": self.classifier_suite,
            "transitions": self.transition_suite,
            "seed": self.seed_suite,
        }

        reports = []
        for name in suites:
            if name not in runners:
                raise RuntimeError("unknown suite '{}'".format(name))
            if name == "transitions" and self.config_.genus == 0:
                continue
            report = runners[name]()
            self._status(
                "  {:<12} {} ({} checks)".format(
                    name, "PASS" if report else "FAIL", len(report.checks)
                )
            )
            for check in report.failures():
                self._status("    ERROR: {}: {}".format(check.name, check.detail))
            reports.append(report)

        return VerificationResult(reports)
