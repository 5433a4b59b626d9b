""" Test equal divisions, their pencils and the pencil map ψ """

import numpy as np
import pytest

from minitwistor_tools.curve import (
    ConfigurationError,
    CurvePoint,
    is_infinite,
    lift_point,
    make_branch_config,
)
from minitwistor_tools.pencils import (
    all_divisions,
    central_division,
    family_member,
    make_division,
    parity_parameter,
    parse_division,
    psi_evaluate,
    psi_fiber,
    swap_parameter,
    target_coordinate,
    verify_circle_images,
)
from minitwistor_tools.projective import restrict_hyperplane

SYMMETRIC = {
    1: (-1.0, 1.0),
    2: (-3.0, -1.0, 1.0, 3.0),
    3: (-5.0, -3.0, -1.0, 1.0, 3.0, 5.0),
}


@pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 10), (4, 35)])
def test_all_divisions(n, count):
    """ C(2n, n)/2 unordered divisions, each with 1 ∈ I """
    divisions = all_divisions(n)
    assert len(divisions) == count
    assert all(division.first[0] == 1 for division in divisions)
    assert len({str(division) for division in divisions}) == count


def test_division_parsing():
    """ Divisions parse with or without the complement """
    assert central_division(2).second == (3, 4)
    assert parse_division("1,4", 2) == make_division([4, 1], 2)
    assert parse_division("1,4|2,3", 2).second == (2, 3)
    assert str(parse_division("2, 3", 2).swapped()) == "1,4|2,3"


@pytest.mark.parametrize("text", ["1", "1,1", "1,5", "a,b", "1,2,3"])
def test_invalid_division(text):
    """ Wrong sizes, repeats, out-of-range and malformed indices """
    with pytest.raises(ConfigurationError):
        parse_division(text, 2)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("s", [0.2, 1.0, 3.5])
def test_swap_parameter(n, s):
    """ Exchanging I and J reparametrizes the same member """
    config = make_branch_config(SYMMETRIC[n])
    for division in all_divisions(n):
        first = family_member(config, division, s)
        second = family_member(config, division.swapped(), swap_parameter(n, s))
        assert first.distance(second) < 1e-12


@pytest.mark.parametrize(
    "points", [(-2.0, -0.5, 0.25, 4.0), (-3.5, -2.0, -0.75, 0.5, 1.25, 6.0)]
)
def test_swap_parameter_over_a_sweep(points):
    """ The swap identity holds to rounding level across four decades of s """
    config = make_branch_config(points)
    n = config.n
    for division in all_divisions(n):
        for s in np.geomspace(0.01, 100.0, 17):
            first = family_member(config, division, s)
            other = complex(swap_parameter(n, s)).real
            second = family_member(config, division.swapped(), other)
            assert first.distance(second) < 1e-12


def test_parameter_conventions():
    """ t = s or i·s, and the swap exchanges 0 and ∞ """
    assert parity_parameter(2, 0.5) == 0.5
    assert parity_parameter(3, 0.5) == 0.5j
    assert swap_parameter(3, 2.0) == -0.5
    assert is_infinite(swap_parameter(2, 0.0))
    assert swap_parameter(2, float("inf")) == 0.0
    assert target_coordinate(3, 2.0j) == pytest.approx(2.0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("s", [0.3, 1.0, 2.5])
def test_members_are_real_and_evenly_tangent(n, s):
    """ Real members restrict to twice the ψ-fiber """
    config = make_branch_config(SYMMETRIC[n])
    division = central_division(n)
    member = family_member(config, division, s)
    assert member.is_real()

    divisor = restrict_hyperplane(member, config)
    assert divisor.degree == 2 * n
    assert all(multiplicity % 2 == 0 for _, multiplicity in divisor.entries)

    fiber = psi_fiber(config, parity_parameter(n, s), division)
    assert fiber.degree == n
    assert divisor.matches(fiber.scaled(2), 1e-6)


def test_psi_at_special_points():
    """ ψ vanishes on r_I, has poles on r_J and is ±1 at infinity """
    config = make_branch_config(SYMMETRIC[2])
    assert psi_evaluate(config, CurvePoint.finite(-3.0, 0j)) == 0
    assert is_infinite(psi_evaluate(config, CurvePoint.finite(3.0, 0j)))
    assert psi_evaluate(config, CurvePoint.infinity(-1)) == -1


def test_psi_fiber_contains_its_points():
    """ Every point of ψ⁻¹(t) maps to t """
    config = make_branch_config(SYMMETRIC[2])
    point = lift_point(config, 0.4 + 0.9j)
    t = psi_evaluate(config, point)
    fiber = psi_fiber(config, t)
    assert fiber.multiplicity(point) == 1
    for other in fiber.points:
        if other.is_finite:
            assert abs(psi_evaluate(config, other) - t) < 1e-9 * (1.0 + abs(t))


@pytest.mark.parametrize("points", [SYMMETRIC[1], SYMMETRIC[2], SYMMETRIC[3]])
def test_circle_images(points):
    """ Real circles land in ℝP¹ and imaginary ones in iℝP¹ """
    report = verify_circle_images(make_branch_config(points), 48)
    assert report, [check.name for check in report.failures()]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_central_circle_covers_the_line(n):
    """ ψ runs from 0 to ∞ on one sheet of the central circle """
    report = verify_circle_images(make_branch_config(SYMMETRIC[n]), 32)
    covering = [check for check in report.checks if "covers" in check.name]
    names = [check.name for check in covering]
    assert "circle {} covers ℝP¹".format(n) in names
    assert ("circle 0 covers ℝP¹" in names) == (n % 2 == 0)
    assert all(covering)
