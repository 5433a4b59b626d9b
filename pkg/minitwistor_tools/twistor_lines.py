""" Twistor lines of the ALE space and their images in the minitwistor space

A twistor line is a real section u ↦ (x(u), y(u), z(u)) of the model
xy = ∏(z - aⱼu), with x, y of degree 2n and z of degree 2 in u. The real
structure maps x(u) to u²ⁿ·conj(y(-1/ū)) and z(u) to -u²·conj(z(-1/ū)).
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import attr
import numpy as np
from numpy.polynomial import polynomial as npp
from typing_extensions import Literal

from .curve import (
    BranchConfig,
    ConfigurationError,
    Extended,
    Quarter,
    QuarterPoint,
    apply_sigma,
    is_infinite,
    make_quarter,
)
from .family import side_polynomial
from .pencils import central_division, member_from_parameter, parity_parameter
from .projective import (
    DivisorError,
    DivisorOnSigma,
    Hyperplane,
    LineLabel,
    make_divisor,
    quotient_map,
    restrict_hyperplane,
)

LineKind = Literal["chain", "invariant", "generic"]
ImageKind = Literal["chain", "invariant", "central", "generic"]

BISECTION_STEPS: int = 200


class DegenerateLineError(RuntimeError):
    """ The requested line meets the exceptional chain or is not a section """


class FitError(RuntimeError):
    """ The image of a line does not span a unique hyperplane """


@attr.s(auto_attribs=True, frozen=True, slots=True)
class TwistorLine:
    """ Section data of a twistor line, coefficients ascending in u """

    kind: LineKind
    x_coeffs: np.ndarray = attr.ib(eq=False)
    y_coeffs: np.ndarray = attr.ib(eq=False)
    z_coeffs: np.ndarray = attr.ib(eq=False)
    index: Optional[int] = None
    lam: Optional[float] = None

    def evaluate(self, u: complex) -> Tuple[complex, complex, complex]:
        """ (x(u), y(u), z(u)) """
        return (
            complex(npp.polyval(u, self.x_coeffs)),
            complex(npp.polyval(u, self.y_coeffs)),
            complex(npp.polyval(u, self.z_coeffs)),
        )

    def product_defect(self, config: BranchConfig) -> float:
        """ Relative coefficient defect of x·y - ∏(z(u) - aⱼu) """
        product = np.ones(1, dtype=complex)
        for point in config.branch_points:
            factor = np.array(self.z_coeffs, dtype=complex)
            factor[1] -= point
            product = npp.polymul(product, factor)

        left = npp.polymul(self.x_coeffs, self.y_coeffs)
        size = max(left.size, product.size)
        difference = np.zeros(size, dtype=complex)
        difference[: left.size] += left
        difference[: product.size] -= product

        scale = float(np.max(np.abs(product))) + float(np.max(np.abs(left)))
        return float(np.max(np.abs(difference))) / max(scale, 1e-300)

    def reality_defect(self) -> float:
        """ Defect of x_{2n-k} = (-1)ᵏ conj(y_k) and z_{2-k} = -(-1)ᵏ conj(z_k) """
        size = self.x_coeffs.size
        signs = (-1.0) ** np.arange(size)
        mirrored_y = (signs * np.conj(self.y_coeffs))[::-1]

        z_signs = -((-1.0) ** np.arange(3))
        mirrored_z = (z_signs * np.conj(self.z_coeffs))[::-1]

        scale = 1.0 + float(np.max(np.abs(self.x_coeffs)))
        return max(
            float(np.max(np.abs(self.x_coeffs - mirrored_y))) / scale,
            float(np.max(np.abs(self.z_coeffs - mirrored_z)))
            / (1.0 + float(np.max(np.abs(self.z_coeffs)))),
        )


def _interval(config: BranchConfig, index: int) -> Tuple[float, float]:
    points = config.branch_points
    lower = points[index - 1] if index > 0 else -np.inf
    upper = points[index] if index < 2 * config.n else np.inf
    return lower, upper


def chain_modulus(config: BranchConfig, index: int, lam: float) -> float:
    """ |cᵢ|² = (-1)ⁱ ∏_{j>i}(λ - aⱼ) / ∏_{j≤i}(λ - aⱼ) for λ in Iᵢ """
    points = config.points
    below = float(np.prod(lam - points[:index]))
    above = float(np.prod(lam - points[index:]))
    return (-1.0) ** index * above / below


def _check_index(config: BranchConfig, index: int, low: int = 0) -> None:
    if not low <= index <= 2 * config.n:
        raise ConfigurationError(
            "interval index {} outside {}..{}".format(index, low, 2 * config.n)
        )


def solve_lambda(config: BranchConfig, index: int, modulus_sq: float) -> float:
    """ The unique λ ∈ Iᵢ with chain_modulus(λ) = modulus_sq

    The modulus decreases strictly from ∞ at the left end of the interval to 0
    at the right end; the interval is mapped onto θ ∈ (0, 1) and bisected.
    """

    _check_index(config, index)
    if not modulus_sq > 0:
        raise ConfigurationError("|c|² must be positive, got {}".format(modulus_sq))

    lower, upper = _interval(config, index)
    scale = config.scale

    def position(theta: float) -> float:
        if index == 0:
            return upper - scale * (1.0 - theta) / theta
        if index == 2 * config.n:
            return lower + scale * theta / (1.0 - theta)
        return lower + theta * (upper - lower)

    target = np.log(modulus_sq)
    search_from, search_to = 0.0, 1.0

    for _ in range(BISECTION_STEPS):
        theta = 0.5 * (search_from + search_to)
        lam = position(theta)
        if lam <= lower or lam >= upper:
            break
        value = chain_modulus(config, index, lam)
        if value <= 0 or not np.isfinite(value):
            break
        if np.log(value) > target:
            search_from = theta
        else:
            search_to = theta

    return position(0.5 * (search_from + search_to))


def chain_line(config: BranchConfig, index: int, c: complex) -> TwistorLine:
    """ x = c∏_{j≤i}(λ - aⱼ)uⁱ, y = c⁻¹∏_{j>i}(λ - aⱼ)u²ⁿ⁻ⁱ, z = λu """

    _check_index(config, index)
    c = complex(c)
    if c == 0:
        raise DegenerateLineError(
            "c = 0 gives an invariant line; use invariant_line instead"
        )

    n = config.n
    lam = solve_lambda(config, index, abs(c) ** 2)
    points = config.points

    x_coeffs = np.zeros(2 * n + 1, dtype=complex)
    y_coeffs = np.zeros(2 * n + 1, dtype=complex)
    x_coeffs[index] = c * np.prod(lam - points[:index])
    y_coeffs[2 * n - index] = np.prod(lam - points[index:]) / c

    z_coeffs = np.array([0, lam, 0], dtype=complex)
    return TwistorLine("chain", x_coeffs, y_coeffs, z_coeffs, index, lam)


def invariant_line(config: BranchConfig, index: int) -> TwistorLine:
    """ Lᵢ: x = y = 0, z = aᵢu """
    _check_index(config, index, 1)
    zeros = np.zeros(2 * config.n + 1, dtype=complex)
    lam = config.branch_points[index - 1]
    z_coeffs = np.array([0, lam, 0], dtype=complex)
    return TwistorLine("invariant", zeros, zeros.copy(), z_coeffs, index, lam)


def default_selection(config: BranchConfig, q: float) -> Tuple[bool, ...]:
    """ Inside roots for aⱼ < q, outside roots for aⱼ > q """
    return tuple(bool(point < q) for point in config.branch_points)


def generic_line(
    config: BranchConfig,
    p: complex,
    q: float,
    selection: Optional[Sequence[bool]] = None,
    phase: float = 0.0,
) -> TwistorLine:
    """ The real line over the section z(u) = p + qu - p̄u²

    Each factor z(u) - aⱼu has an antipodal root pair (u, -1/ū); selection[j]
    picks the root of modulus < 1 for x and leaves the other to y. The moduli of
    the leading constants follow from reality, their phase is free.
    """

    p = complex(p)
    q = float(q)

    if p == 0:
        raise DegenerateLineError(
            "p = 0 gives z = qu, a line meeting the chain; use chain_line"
        )
    for point in config.branch_points:
        if q == point:
            raise DegenerateLineError(
                "q = {} is a branch point: roots lie on |u| = 1".format(q)
            )

    if selection is None:
        selection = default_selection(config, q)
    if len(selection) != 2 * config.n:
        raise ConfigurationError(
            "selection needs {} entries, got {}".format(2 * config.n, len(selection))
        )

    chosen = []
    complement = []
    for point, inside in zip(config.branch_points, selection):
        roots = npp.polyroots([p, q - point, -p.conjugate()])
        roots = sorted(roots, key=abs)
        first, second = (roots[0], roots[1]) if inside else (roots[1], roots[0])
        chosen.append(complex(first))
        complement.append(complex(second))

    n = config.n
    leading = p.conjugate() ** (2 * n)
    k_value = leading / np.prod(np.conj(complement))

    if abs(k_value.imag) > 1e-8 * abs(k_value) or k_value.real <= 0:
        raise DegenerateLineError(
            "selection admits no real line: K = {} is not positive".format(k_value)
        )

    d_value = np.sqrt(k_value.real) * np.exp(1j * phase)
    c_value = leading / d_value

    x_coeffs = c_value * npp.polyfromroots(chosen)
    y_coeffs = d_value * npp.polyfromroots(complement)
    z_coeffs = np.array([p, q, -p.conjugate()], dtype=complex)

    return TwistorLine("generic", x_coeffs, y_coeffs, z_coeffs)


def rotate_line(line: TwistorLine, phase: float) -> TwistorLine:
    """ The scalar circle (x, y) ↦ (e^{-iθ}x, e^{iθ}y) """
    factor = np.exp(1j * phase)
    return attr.evolve(
        line, x_coeffs=line.x_coeffs / factor, y_coeffs=line.y_coeffs * factor
    )


def sample_image(
    config: BranchConfig, line: TwistorLine, count: Optional[int] = None
) -> np.ndarray:
    """ Rows of normalized quotient-map values along |u| = 1 """
    if count is None:
        count = 4 * config.n + 8
    rows = []
    for k in range(count):
        u = np.exp(2j * np.pi * (k + 0.5) / count)
        x, y, z = line.evaluate(u)
        row = quotient_map(x, y, z, u, config)
        rows.append(row / np.linalg.norm(row))
    return np.array(rows)


def annihilation_defect(rows: np.ndarray, lift: np.ndarray) -> float:
    """ max |⟨h, row⟩| for unit rows and a unit hyperplane """
    lift = np.asarray(lift, dtype=complex)
    return float(np.max(np.abs(rows @ (lift / np.linalg.norm(lift)))))


@attr.s(auto_attribs=True, frozen=True, slots=True)
class ImageReport:
    """ Components of the meromorphic image of a twistor line in 𝒯 """

    kind: ImageKind
    hyperplane: Hyperplane
    conic: Optional[float] = None
    conic_multiplicity: int = 0
    lines: Tuple[Tuple[LineLabel, int], ...] = ()
    meets: Tuple[LineLabel, ...] = ()
    conjugate: Optional[Hyperplane] = None
    real: bool = True
    orbifold_order: Optional[int] = None

    @property
    def lift(self) -> np.ndarray:
        """ Realization as a hyperplane of ℙⁿ⁺² """
        return self.hyperplane.lift()

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        return {
            "kind": self.kind,
            "conic": self.conic,
            "conic_multiplicity": self.conic_multiplicity,
            "lines": [[str(label), multiplicity] for label, multiplicity in self.lines],
            "meets": [str(label) for label in self.meets],
            "hyperplane": {
                "p": list(self.hyperplane.p_coeffs),
                "c_w": self.hyperplane.c_w,
            },
            "conjugate": None
            if self.conjugate is None
            else {"p": list(self.conjugate.p_coeffs), "c_w": self.conjugate.c_w},
            "lift": list(self.lift),
            "real": self.real,
            "orbifold_order": self.orbifold_order,
        }


def _pairs(
    indices: Sequence[int], multiplicity: int = 1
) -> List[Tuple[LineLabel, int]]:
    out = []
    for index in indices:
        out.append((LineLabel(index), multiplicity))
        out.append((LineLabel(index, True), multiplicity))
    return out


def image_of_chain_line(config: BranchConfig, index: int, lam: Extended) -> ImageReport:
    """ Image of a chain line over λ ∈ Iᵢ, i ≠ n

    It is f_λ with multiplicity |n - i| together with the lines ℓⱼ, ℓ̄ⱼ for
    j ≤ i (i < n) or j > i (i > n).
    """

    n = config.n
    _check_index(config, index)
    if index == n:
        raise DegenerateLineError(
            "lines over the central interval have split images; use central_line_image"
        )

    lam = float(complex(lam).real)
    lower, upper = _interval(config, index)
    if not lower < lam < upper:
        raise ConfigurationError(
            "λ = {} not inside the interval I{} = ({}, {})".format(
                lam, index, lower, upper
            )
        )

    if index < n:
        labels = _pairs(range(1, index + 1))
    else:
        labels = _pairs(range(index + 1, 2 * n + 1))

    order = abs(n - index)
    hyperplane = Hyperplane(side_polynomial(config, lam, index), 0j)

    return ImageReport(
        "chain",
        hyperplane,
        conic=lam,
        conic_multiplicity=order,
        lines=tuple(labels),
        orbifold_order=order,
    )


def image_of_invariant_line(config: BranchConfig, index: int) -> ImageReport:
    """ Image of Lᵢ: the conic over aᵢ degenerates into ℓᵢ ∪ ℓ̄ᵢ """

    n = config.n
    _check_index(config, index, 1)
    points = config.points
    a = points[index - 1]

    if index <= n:
        coeffs = npp.polyfromroots(list(points[: index - 1]) + [a] * (n - index + 1))
        labels = _pairs(range(1, index)) + _pairs([index], n - index + 1)
    else:
        coeffs = npp.polyfromroots(list(points[index:]) + [a] * (index - n))
        labels = _pairs([index], index - n) + _pairs(range(index + 1, 2 * n + 1))

    return ImageReport("invariant", Hyperplane(coeffs.real, 0j), lines=tuple(labels))


def axis_orders(config: BranchConfig) -> List[Tuple[int, int]]:
    """ Orbifold order |n - i| over each non-central chain interval """
    n = config.n
    return [(index, abs(n - index)) for index in range(2 * n + 1) if index != n]


def central_line_image(
    config: BranchConfig, kappa: Extended, tol: float = 1e-12
) -> ImageReport:
    """ Split image Γ ∪ Γ̄ of a line meeting the central sphere at κ

    κ is the real-structure-adapted pencil coordinate s; Γ is the member of
    the complexified central pencil at κ and Γ̄ the member at κ̄.
    """

    n = config.n
    division = central_division(n)

    if is_infinite(kappa):
        gamma = member_from_parameter(config, division, kappa)
        conjugate = gamma
        lines = tuple((LineLabel(j), 1) for j in division.second)
        return ImageReport("central", gamma, lines=lines, conjugate=conjugate)

    kappa = complex(kappa)
    gamma = member_from_parameter(config, division, parity_parameter(n, kappa))
    conjugate = member_from_parameter(
        config, division, parity_parameter(n, kappa.conjugate())
    )
    real = gamma.distance(conjugate) <= tol

    lines: Tuple[Tuple[LineLabel, int], ...] = ()
    meets: Tuple[LineLabel, ...] = ()
    if kappa == 0:
        lines = tuple((LineLabel(j), 1) for j in division.first)
    else:
        meets = tuple(LineLabel(j, True) for j in division.first) + tuple(
            LineLabel(j) for j in division.second
        )

    return ImageReport(
        "central", gamma, lines=lines, meets=meets, conjugate=conjugate, real=real
    )


@attr.s(auto_attribs=True, frozen=True, slots=True)
class GenericImage:
    """ Fitted hyperplane of a generic line and its restriction shape q + q̄ + 2D′ """

    lift: np.ndarray = attr.ib(eq=False)
    hyperplane: Hyperplane
    phase: complex
    singular_ratio: float
    gap_ratio: float
    q: QuarterPoint
    residual_divisor: DivisorOnSigma
    restriction: DivisorOnSigma

    def to_dict(self) -> Dict[str, Any]:
        """ Record for serialization """
        return {
            "lift": list(self.lift),
            "hyperplane": {
                "p": list(self.hyperplane.p_coeffs),
                "c_w": self.hyperplane.c_w,
            },
            "phase": self.phase,
            "singular_ratio": self.singular_ratio,
            "gap_ratio": self.gap_ratio,
            "q": [self.q.point.z, self.q.point.v],
            "residual_divisor": [
                [point.kind, point.z, point.v, multiplicity]
                for point, multiplicity in self.residual_divisor.entries
            ],
        }


def fit_hyperplane(
    rows: np.ndarray, tol: float = 1e-8
) -> Tuple[np.ndarray, float, float]:
    """ Unique null direction of the sampled image; (lift, ratio, gap) """
    _, values, vh = np.linalg.svd(rows)
    ratio = float(values[-1] / values[0])
    gap = float(values[-2] / values[0]) if values.size > 1 else 1.0

    if ratio >= tol:
        raise FitError(
            "image spans no hyperplane: singular value ratio {:.3e}".format(ratio)
        )
    if gap < 1e3 * tol:
        raise FitError(
            "hyperplane is not unique: second singular value ratio {:.3e}".format(gap)
        )

    return vh[-1].conjugate(), ratio, gap


def _shape(
    config: BranchConfig, hyperplane: Hyperplane, quarter: Quarter, radius: float
) -> Optional[Tuple[QuarterPoint, DivisorOnSigma, DivisorOnSigma]]:
    """ (q, D′, restriction) when the restriction is q + q̄ + 2D′ with q ∈ Σ″ """

    restriction = restrict_hyperplane(hyperplane, config, radius)
    simple = [(point, mult) for point, mult in restriction.entries if mult % 2]

    if len(simple) != 2 or any(mult != 1 for _, mult in simple):
        return None

    for point, _ in simple:
        tagged = quarter.membership(point, 1e-8)
        if not tagged.in_quarter:
            continue
        pair = make_divisor([(point, 1), (apply_sigma(config, point), 1)])
        try:
            residual = restriction.subtract(pair).halved()
        except DivisorError:
            return None
        return tagged, residual, restriction

    return None


def _real_scaled(hyperplane: Hyperplane) -> Hyperplane:
    coeffs = hyperplane.p_coeffs
    pivot = coeffs[int(np.argmax(np.abs(coeffs)))]
    return Hyperplane(coeffs / pivot, hyperplane.c_w / pivot)


def image_of_generic_line(
    config: BranchConfig,
    line: TwistorLine,
    quarter: Optional[Quarter] = None,
    tol: float = 1e-8,
    radius: float = 1e-5,
) -> GenericImage:
    """ Fit the hyperplane through the image of a generic line and extract q, D′

    The fitted hyperplane (p, α, β) of ℙⁿ⁺² is moved through the centre by the
    residual circle element t with t² = α/β; of the two square roots the one
    placing the simple tangency point q in the quarter is kept.
    """

    if quarter is None:
        quarter = make_quarter(config)

    rows = sample_image(config, line)
    lift, ratio, gap = fit_hyperplane(rows, tol)

    alpha, beta_value = lift[-2], lift[-1]
    if abs(beta_value) <= 1e-12 * float(np.max(np.abs(lift))):
        raise FitError("hyperplane has no y component; the line meets the chain")

    root = np.sqrt(alpha / beta_value)
    for phase in (root, -root):
        moved = lift.copy()
        moved[-2] = alpha / phase
        moved[-1] = beta_value * phase
        hyperplane = _real_scaled(Hyperplane.from_lift(moved, 1e-6))
        shape = _shape(config, hyperplane, quarter, radius)
        if shape is not None:
            q, residual, restriction = shape
            return GenericImage(
                moved, hyperplane, complex(phase), ratio, gap, q, residual, restriction
            )

    raise FitError(
        "restriction is not of the form q + q̄ + 2D′ with q in the quarter"
    )

