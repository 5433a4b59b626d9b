""" Equal divisions, their evenly tangent pencils and the pencil map ψ """

from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import attr
import numpy as np
from numpy.polynomial import polynomial as npp

from .curve import (
    INFINITY,
    BranchConfig,
    ConfigurationError,
    CurvePoint,
    Extended,
    arc_samples,
    classify_circle,
    is_central,
    is_infinite,
    make_quarter,
)
from .polynomials import ROOT_INFINITY, roots_with_multiplicity
from .projective import DivisorOnSigma, Hyperplane, make_divisor
from .results import CheckResult, Report


@attr.s(auto_attribs=True, frozen=True, slots=True)
class EqualDivision:
    """ A split {1..2n} = I ∪ J into two n-sets, 1-based indices """

    first: Tuple[int, ...]
    second: Tuple[int, ...]

    @property
    def n(self) -> int:
        """ Size of each half """
        return len(self.first)

    def a_coeffs(self, config: BranchConfig) -> np.ndarray:
        """ A(z) = ∏_{i∈I}(z - aᵢ) """
        return npp.polyfromroots([config.branch_points[i - 1] for i in self.first]).real

    def b_coeffs(self, config: BranchConfig) -> np.ndarray:
        """ B(z) = ∏_{j∈J}(z - aⱼ) """
        roots = [config.branch_points[j - 1] for j in self.second]
        return npp.polyfromroots(roots).real

    def swapped(self) -> "EqualDivision":
        """ The same division with I and J exchanged """
        return EqualDivision(self.second, self.first)

    def __str__(self) -> str:
        return "{}|{}".format(
            ",".join(str(i) for i in self.first), ",".join(str(j) for j in self.second)
        )


def make_division(first: Sequence[int], n: int) -> EqualDivision:
    """ Division with I = first and J its complement in {1..2n} """
    indices = sorted(int(i) for i in first)

    if len(indices) != n or len(set(indices)) != n:
        raise ConfigurationError(
            "division needs {} distinct indices, got {}".format(n, list(first))
        )
    for index in indices:
        if not 1 <= index <= 2 * n:
            raise ConfigurationError(
                "division index {} outside 1..{}".format(index, 2 * n)
            )

    second = [j for j in range(1, 2 * n + 1) if j not in indices]
    return EqualDivision(tuple(indices), tuple(second))


def parse_division(text: str, n: int) -> EqualDivision:
    """ Parse "1,2" or "1,2|3,4" """
    head = text.split("|")[0]
    try:
        indices = [int(token) for token in head.split(",") if token.strip()]
    except ValueError:
        raise ConfigurationError("malformed division '{}'".format(text))
    return make_division(indices, n)


def central_division(n: int) -> EqualDivision:
    """ ({1..n}, {n+1..2n}) """
    return make_division(range(1, n + 1), n)


def all_divisions(n: int) -> List[EqualDivision]:
    """ The C(2n, n)/2 unordered divisions, each listed with 1 ∈ I """
    return [
        make_division((1,) + rest, n)
        for rest in combinations(range(2, 2 * n + 1), n - 1)
    ]


def parity_parameter(n: int, s: Extended) -> Extended:
    """ t = s for n even, t = i·s for n odd """
    if is_infinite(s):
        return INFINITY
    return complex(s) if n % 2 == 0 else 1j * complex(s)


def swap_parameter(n: int, s: Extended) -> Extended:
    """ Parameter of the same member after exchanging I and J (t ↦ 1/t) """
    if is_infinite(s):
        return 0.0
    s = complex(s)
    if s == 0:
        return INFINITY
    return 1.0 / s if n % 2 == 0 else -1.0 / s


def family_member(
    config: BranchConfig, division: EqualDivision, s: Extended
) -> Hyperplane:
    """ The real evenly tangent member P = (A + t²B)/2, c_w = t """
    a_coeffs = division.a_coeffs(config)
    b_coeffs = division.b_coeffs(config)

    if is_infinite(s):
        return Hyperplane(0.5 * b_coeffs, 0j)

    t = complex(parity_parameter(config.n, s))
    return Hyperplane(0.5 * (a_coeffs + t * t * b_coeffs), t)


def member_from_parameter(
    config: BranchConfig, division: EqualDivision, t: Extended
) -> Hyperplane:
    """ Member of the complexified pencil at a complex parameter t """
    if is_infinite(t):
        return Hyperplane(0.5 * division.b_coeffs(config), 0j)
    t = complex(t)
    return Hyperplane(
        0.5 * (division.a_coeffs(config) + t * t * division.b_coeffs(config)), t
    )


def tangency_coeffs(
    config: BranchConfig, division: EqualDivision, t: complex
) -> np.ndarray:
    """ (A - t²B)/2, whose square is P² - c_w² f """
    return 0.5 * (division.a_coeffs(config) - t * t * division.b_coeffs(config))


def psi_evaluate(
    config: BranchConfig, point: CurvePoint, division: Optional[EqualDivision] = None
) -> Extended:
    """ ψ = A(z)/v, extended to the ramification points and infinity """
    if division is None:
        division = central_division(config.n)

    if not point.is_finite:
        return complex(point.sign)

    for index, value in enumerate(config.branch_points, start=1):
        if point.z == value and point.v == 0:
            return 0j if index in division.first else INFINITY

    if point.v == 0:
        return INFINITY

    return complex(npp.polyval(point.z, division.a_coeffs(config))) / point.v


def target_coordinate(n: int, value: Extended) -> Extended:
    """ s = ψ for n even and s = ψ/i for n odd, so reality is s ∈ ℝP¹ """
    if is_infinite(value):
        return INFINITY
    return complex(value) if n % 2 == 0 else complex(value) / 1j


def psi_fiber(
    config: BranchConfig,
    t: Extended,
    division: Optional[EqualDivision] = None,
    radius: float = 1e-5,
) -> DivisorOnSigma:
    """ ψ⁻¹(t): roots of A - t²B lifted with v = A(z)/t """
    if division is None:
        division = central_division(config.n)

    n = config.n

    if is_infinite(t):
        indices = division.second
    elif complex(t) == 0:
        indices = division.first
    else:
        indices = ()

    if indices:
        return make_divisor(
            [(CurvePoint.finite(config.branch_points[i - 1], 0j), 1) for i in indices]
        )

    t = complex(t)
    a_coeffs = division.a_coeffs(config)
    entries = []
    finite = 0

    for root, multiplicity in roots_with_multiplicity(
        2 * tangency_coeffs(config, division, t), radius
    ):
        if abs(root) >= ROOT_INFINITY:
            continue
        finite += multiplicity
        v = complex(npp.polyval(root, a_coeffs)) / t
        entries.append((CurvePoint.finite(root, v), multiplicity))

    sign = 1 if abs(t - 1) < abs(t + 1) else -1
    entries.append((CurvePoint.infinity(sign), n - finite))

    return make_divisor(entries)


def _strictly_monotone(values: np.ndarray) -> bool:
    steps = np.diff(values)
    return bool(np.all(steps > 0) or np.all(steps < 0))


def _unimodal(values: np.ndarray) -> bool:
    """ Rises then falls (each phase may be empty) """
    steps = np.diff(values)
    peak = int(np.argmax(values))
    return bool(np.all(steps[:peak] > 0) and np.all(steps[peak:] < 0))


def circle_values(
    config: BranchConfig, index: int, count: int, orientation: int = 1
) -> Tuple[np.ndarray, np.ndarray]:
    """ Target coordinates s on the two sheets over the arc Iᵢ """
    quarter = make_quarter(config, orientation)
    values = []
    for x in arc_samples(config, index, count):
        point = quarter.boundary_parametrization(x).point
        value = target_coordinate(config.n, psi_evaluate(config, point))
        values.append(complex(value))
    upper = np.array(values)
    # ψ∘τ = -ψ
    return upper, -upper


def _arc_ends(config: BranchConfig, index: int) -> Tuple[float, float]:
    """ Branch points bounding the arc Iᵢ, I₀ running through ∞ """
    points = config.branch_points
    if index == 0:
        return points[-1], points[0]
    return points[index - 1], points[index]


def _coverage_check(
    config: BranchConfig, index: int, values: np.ndarray, signed: bool
) -> CheckResult:
    """ One sheet runs from s = 0 to s = ∞ and the other is its negative """
    ends = [
        psi_evaluate(config, CurvePoint.finite(end, 0j))
        for end in _arc_ends(config, index)
    ]
    zero = [not is_infinite(end) and complex(end) == 0 for end in ends]
    infinite = [is_infinite(end) for end in ends]
    covered = (
        signed
        and sorted(zero) == [False, True]
        and infinite == [not end for end in zero]
    )

    magnitudes = np.abs(values)
    if covered:
        # Samples run from the first end to the second
        covered = bool(magnitudes[-1] > magnitudes[0]) == zero[0]

    return CheckResult(
        "circle {} covers ℝP¹".format(index),
        covered,
        None,
        None,
        "ψ at the ends: {}".format(", ".join(str(end) for end in ends)),
    )


def verify_circle_images(
    config: BranchConfig, count: int = 64, tol: float = 1e-9
) -> Report:
    """ Images of the 2n circles of Σ under ψ

    Real circles land in ℝP¹, pure-imaginary ones in iℝP¹; the central circle
    (and Σ₀ when n is even) maps bijectively, the other real circles 2:1 onto
    intervals around s_L = 0 (i < n) or s_R = ∞ (i > n).
    """

    n = config.n
    checks = []

    for index in range(2 * n):
        circle = classify_circle(config, index)
        upper, lower = circle_values(config, index, count)
        finite = upper[np.isfinite(upper)]
        scale = 1.0 + np.abs(finite)

        if circle.is_real:
            defect = np.abs(finite.imag) / scale
        else:
            defect = np.abs(finite.real) / scale
        worst = float(np.max(defect)) if defect.size else 0.0

        checks.append(
            CheckResult(
                "circle {} lands in {}".format(
                    index, "real line" if circle.is_real else "imaginary line"
                ),
                worst <= tol,
                worst,
                tol,
            )
        )

        if not circle.is_real:
            continue

        first = upper.real
        second = lower.real
        signed = bool(np.all(first > 0) or np.all(first < 0))

        if is_central(config, circle) or index == 0:
            shape = _strictly_monotone(first) and _strictly_monotone(second)
            label = "bijective"
            checks.append(_coverage_check(config, index, first, signed))
        elif index < n:
            shape = _unimodal(np.abs(first)) and _unimodal(np.abs(second))
            label = "2:1 around s_L"
        else:
            shape = _unimodal(1.0 / np.abs(first)) and _unimodal(1.0 / np.abs(second))
            label = "2:1 around s_R"

        checks.append(
            CheckResult(
                "circle {} maps {}".format(index, label),
                shape and signed,
                0.0 if shape and signed else 1.0,
                0.0,
                "constant sign per sheet" if signed else "sign change on a sheet",
            )
        )

    return Report("circle images", checks)
