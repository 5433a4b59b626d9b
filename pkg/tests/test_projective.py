""" Test the projective model, hyperplanes and restriction divisors """

import numpy as np
import pytest

from minitwistor_tools.curve import (
    CurvePoint,
    apply_sigma,
    lift_point,
    make_branch_config,
)
from minitwistor_tools.projective import (
    DivisorError,
    Hyperplane,
    OffModelError,
    exact_identity_holds,
    make_divisor,
    minitwistor_equation,
    passes_through_vertex,
    projective_distance,
    quotient_map,
    restrict_hyperplane,
    rnc_embed,
    sigma_invariant,
)

CONFIGS = [
    (-1.0, 1.0),
    (-3.0, -1.0, 1.0, 3.0),
    (-2.0, -0.5, 0.25, 4.0),
    (-5.0, -3.0, -1.0, 1.0, 3.0, 5.0),
    (-3.5, -2.0, -0.75, 0.5, 1.25, 6.0),
]


def test_rational_normal_curve():
    """ (1 : λ : … : λⁿ), with infinity at the last coordinate """
    assert np.allclose(rnc_embed(2.0, 3), [1, 2, 4, 8])
    assert np.allclose(rnc_embed(float("inf"), 2), [0, 0, 1])


def test_equation_terms():
    """ The quadric of (-3, -1, 1, 3) under both split rules """
    config = make_branch_config(CONFIGS[1])
    canonical = minitwistor_equation(config)
    assert canonical.terms() == {(0, 0): 9.0, (1, 1): -10.0, (2, 2): 1.0}
    extreme = minitwistor_equation(config, "extreme")
    assert extreme.terms() == {(0, 0): 9.0, (2, 0): -10.0, (2, 2): 1.0}


@pytest.mark.parametrize("points", CONFIGS)
@pytest.mark.parametrize("rule", ["canonical", "extreme"])
def test_exact_identity(points, rule):
    """ Q(uⁿ, …, zⁿ) = ∏(z - aᵢu) holds in rational arithmetic """
    assert exact_identity_holds(make_branch_config(points), rule)


@pytest.mark.parametrize("points", CONFIGS)
def test_quotient_map_lands_on_model(points):
    """ Points with xy = ∏(z - aᵢu) map onto the minitwistor quadric """
    config = make_branch_config(points)
    equation = minitwistor_equation(config)
    for z, u in ((0.5, 1.0), (2.0 + 1.0j, 0.3), (1.0, 0.0)):
        product = complex(np.prod(z - config.points * u))
        x = 1.5 - 0.5j
        coordinates = quotient_map(x, product / x, z, u, config)
        assert equation.residual(coordinates) < 1e-13


def test_quotient_map_rejects_points_off_the_model():
    """ xy ≠ ∏(z - aᵢu) is an error """
    config = make_branch_config(CONFIGS[1])
    with pytest.raises(OffModelError):
        quotient_map(1.0, 1.0, 0.5, 1.0, config)


def test_hyperplane_lift():
    """ The lift passes through the centre and projects back """
    hyperplane = Hyperplane([1.0, 2.0, 3.0], 0.5)
    lift = hyperplane.lift()
    assert lift[-2] == lift[-1] == -0.25
    assert Hyperplane.from_lift(lift).distance(hyperplane) < 1e-15
    with pytest.raises(OffModelError):
        Hyperplane.from_lift(np.array([1.0, 0.0, 0.0, 1.0, 2.0]))


def test_hyperplane_reality():
    """ c_w is real for n even and imaginary for n odd """
    assert Hyperplane([1.0, 0.0, -1.0], 0.7).is_real()
    assert not Hyperplane([1.0, 0.0, -1.0], 0.7j).is_real()
    assert Hyperplane([1.0, 0.0, 0.0, 1.0], 0.7j).is_real()
    assert not Hyperplane([1.0, 0.0, 0.0, 1.0], 0.7).is_real()
    assert not Hyperplane([0.0, 0.0, 0.0], 0.0).is_real()


def test_vertex():
    """ c_w = 0 iff the hyperplane contains the vertex """
    assert passes_through_vertex(Hyperplane([1.0, 1.0], 0.0))
    assert not passes_through_vertex(Hyperplane([1.0, 1.0], 0.1))


def test_restriction_through_vertex():
    """ A binary form pulls back; roots at branch points double """
    config = make_branch_config(CONFIGS[1])
    divisor = restrict_hyperplane(Hyperplane([-2.0, -1.0, 1.0], 0.0), config)
    assert divisor.degree == 4
    assert divisor.multiplicity(CurvePoint.finite(-1.0, 0j)) == 2
    assert divisor.multiplicity(lift_point(config, 2.0, 1)) == 1
    assert divisor.multiplicity(lift_point(config, 2.0, -1)) == 1


def test_restriction_at_infinity():
    """ P = z², c_w = 1 is tangent to order two at ∞₊ """
    config = make_branch_config(CONFIGS[1])
    divisor = restrict_hyperplane(Hyperplane([0.0, 0.0, 1.0], 1.0), config)
    assert divisor.degree == 4
    assert divisor.multiplicity(CurvePoint.infinity(1)) == 2
    assert divisor.multiplicity(CurvePoint.infinity(-1)) == 0
    for point in divisor.points:
        if point.is_finite:
            assert abs(abs(point.z) - np.sqrt(0.9)) < 1e-10
            assert abs(point.v - point.z ** 2) < 1e-9


@pytest.mark.parametrize("points", CONFIGS[1:])
def test_real_restriction_is_sigma_invariant(points):
    """ Real hyperplanes cut σ-invariant divisors of degree 2n """
    config = make_branch_config(points)
    n = config.n
    c_w = 0.4 if n % 2 == 0 else 0.4j
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    coeffs[n] = 1.0
    divisor = restrict_hyperplane(Hyperplane(coeffs, c_w), config)
    assert divisor.degree == 2 * n
    assert sigma_invariant(divisor, config)


def test_divisor_arithmetic():
    """ Merging, subtracting and halving """
    config = make_branch_config(CONFIGS[1])
    point = lift_point(config, 0.5 + 0.5j)
    mirror = apply_sigma(config, point)

    divisor = make_divisor([(point, 1), (point, 1), (mirror, 2)])
    assert len(divisor.entries) == 2
    assert divisor.degree == 4
    assert divisor.halved().degree == 2

    rest = divisor.subtract(make_divisor([(point, 1)]))
    assert rest.multiplicity(point) == 1
    with pytest.raises(DivisorError):
        rest.halved()
    with pytest.raises(DivisorError):
        rest.subtract(make_divisor([(point, 2)]))

    assert divisor.distance(rest) == np.inf
    assert divisor.matches(make_divisor([(mirror, 2), (point, 2)]))


def test_projective_distance_resolves_nearby_points():
    """ Rescaled vectors sit at rounding level, small offsets are measured """
    vector = np.array([1.0, -2.5 + 0.3j, 0.7j, 4.0, -0.125])
    assert projective_distance(vector, (3.7 - 1.1j) * vector) < 1e-14

    offset = vector.copy()
    offset[2] += 1e-10 * np.linalg.norm(vector)
    assert projective_distance(vector, offset) == pytest.approx(1e-10, rel=0.1)
    assert projective_distance([1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0)

    with pytest.raises(OffModelError):
        projective_distance(np.zeros(3), vector)
