""" Test twistor lines of the ALE space and their minitwistor images """

import numpy as np
import pytest

from minitwistor_tools.classifier import genus_drop_check
from minitwistor_tools.curve import ConfigurationError, make_branch_config
from minitwistor_tools.projective import minitwistor_equation
from minitwistor_tools.twistor_lines import (
    DegenerateLineError,
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

SYMMETRIC = {
    1: (-1.0, 1.0),
    2: (-3.0, -1.0, 1.0, 3.0),
    3: (-5.0, -3.0, -1.0, 1.0, 3.0, 5.0),
}


def test_chain_modulus():
    """ |c₀|² = ∏(λ - aⱼ) left of every branch point """
    config = make_branch_config(SYMMETRIC[2])
    assert chain_modulus(config, 0, -5.0) == pytest.approx(384.0)
    assert chain_modulus(config, 4, 5.0) == pytest.approx(1.0 / 384.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_solve_lambda(n):
    """ solve_lambda inverts the modulus on every chain interval """
    config = make_branch_config(SYMMETRIC[n])
    points = config.points
    for index in range(2 * n + 1):
        lower = points[index - 1] if index > 0 else points[0] - 10.0
        upper = points[index] if index < 2 * n else points[-1] + 10.0
        for lam in lower + (upper - lower) * np.array([0.1, 0.5, 0.9]):
            found = solve_lambda(config, index, chain_modulus(config, index, lam))
            assert abs(found - lam) < 1e-10 * (1.0 + abs(lam))


def test_solve_lambda_rejects_bad_input():
    """ Index out of range or non-positive modulus """
    config = make_branch_config(SYMMETRIC[2])
    with pytest.raises(ConfigurationError):
        solve_lambda(config, 5, 1.0)
    with pytest.raises(ConfigurationError):
        solve_lambda(config, 1, 0.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chain_lines_are_real_sections(n):
    """ xy = ∏(z - aⱼu) and the real structure hold coefficientwise """
    config = make_branch_config(SYMMETRIC[n])
    for index in range(2 * n + 1):
        for c in (0.5, 1.0 + 1.0j, 3.0):
            line = chain_line(config, index, c)
            assert line.product_defect(config) < 1e-10
            assert line.reality_defect() < 1e-10
    with pytest.raises(DegenerateLineError):
        chain_line(config, 0, 0.0)


def test_chain_image_on_the_outer_interval():
    """ Over I₀ the image is the conic f_λ counted n times """
    config = make_branch_config(SYMMETRIC[2])
    image = image_of_chain_line(config, 0, -5.0)
    assert image.conic == -5.0
    assert image.conic_multiplicity == 2
    assert image.orbifold_order == 2
    assert image.lines == ()
    assert np.allclose(image.hyperplane.p_coeffs, [25.0, 10.0, 1.0])


def test_chain_image_picks_up_lines():
    """ Over I₁ the lines ℓ₁, ℓ̄₁ join the conic """
    config = make_branch_config(SYMMETRIC[2])
    image = image_of_chain_line(config, 1, -2.0)
    assert image.conic_multiplicity == 1
    assert [multiplicity for _, multiplicity in image.lines] == [1, 1]
    assert [label.index for label, _ in image.lines] == [1, 1]


def test_chain_image_rejects_bad_input():
    """ The central interval is split and λ must lie in Iᵢ """
    config = make_branch_config(SYMMETRIC[2])
    with pytest.raises(DegenerateLineError):
        image_of_chain_line(config, 2, 0.0)
    with pytest.raises(ConfigurationError):
        image_of_chain_line(config, 0, -2.0)


@pytest.mark.parametrize("n", [2, 3])
def test_chain_images_contain_the_lines(n):
    """ Sampled images are annihilated by the image hyperplane """
    config = make_branch_config(SYMMETRIC[n])
    for index in range(2 * n + 1):
        if index == n:
            continue
        for c in (0.5, 2.0j):
            line = chain_line(config, index, c)
            image = image_of_chain_line(config, index, line.lam)
            rows = sample_image(config, line)
            assert annihilation_defect(rows, image.lift) < 1e-9


@pytest.mark.parametrize("n", [2, 3])
def test_invariant_images(n):
    """ Lᵢ lies in its degenerate conic ℓᵢ ∪ ℓ̄ᵢ """
    config = make_branch_config(SYMMETRIC[n])
    for index in range(1, 2 * n + 1):
        line = invariant_line(config, index)
        image = image_of_invariant_line(config, index)
        assert image.conic is None
        rows = sample_image(config, line)
        assert annihilation_defect(rows, image.lift) < 1e-9


def test_invariant_image_multiplicities():
    """ ℓ₁ and ℓ̄₁ are counted n times in the image of L₁ """
    config = make_branch_config(SYMMETRIC[2])
    image = image_of_invariant_line(config, 1)
    assert [multiplicity for _, multiplicity in image.lines] == [2, 2]


def test_axis_orders():
    """ Orbifold orders |n - i| off the central interval """
    config = make_branch_config(SYMMETRIC[2])
    assert axis_orders(config) == [(0, 2), (1, 1), (3, 1), (4, 2)]


@pytest.mark.parametrize("n", [2, 3])
def test_central_line_images(n):
    """ Real κ gives a real image, complex κ a conjugate pair """
    config = make_branch_config(SYMMETRIC[n])
    for kappa in (0.5, 1.0, 2.0):
        assert central_line_image(config, kappa).real
    image = central_line_image(config, 1.0 + 0.5j)
    assert not image.real
    assert image.conjugate is not None
    assert image.hyperplane.distance(image.conjugate) > 1e-6


def test_central_line_at_zero():
    """ κ = 0 contains the lines of the first half """
    config = make_branch_config(SYMMETRIC[2])
    image = central_line_image(config, 0.0)
    assert [label.index for label, _ in image.lines] == [1, 2]
    assert image.meets == ()


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("p, q", [(0.5 + 0.5j, 0.2), (1.0 - 0.3j, -2.0), (0.3j, 4.0)])
def test_generic_lines(n, p, q):
    """ Generic lines are real sections whose images lie on the model """
    config = make_branch_config(SYMMETRIC[n])
    equation = minitwistor_equation(config)
    line = generic_line(config, p, q)
    assert line.product_defect(config) < 1e-10
    assert line.reality_defect() < 1e-10
    for row in sample_image(config, line):
        assert equation.residual(row) < 1e-10

    turned = rotate_line(line, 0.7)
    assert turned.product_defect(config) < 1e-10
    assert turned.reality_defect() < 1e-10


def test_generic_line_rejects_degenerate_input():
    """ p = 0 meets the chain and q at a branch point has no root split """
    config = make_branch_config(SYMMETRIC[2])
    with pytest.raises(DegenerateLineError):
        generic_line(config, 0.0, 0.2)
    with pytest.raises(DegenerateLineError):
        generic_line(config, 0.5j, 1.0)
    with pytest.raises(ConfigurationError):
        generic_line(config, 0.5j, 0.2, selection=(True, False))


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3])
def test_generic_images(n):
    """ Fitted hyperplanes restrict to q + q̄ + 2D′ independently of the phase """
    config = make_branch_config(SYMMETRIC[n])
    line = generic_line(config, 0.5 + 0.5j, 0.2)
    image = image_of_generic_line(config, line)
    assert image.singular_ratio < 1e-8
    assert image.q.interior
    assert image.residual_divisor.degree == n - 1
    assert genus_drop_check(config, image.hyperplane) == n - 1

    turned = image_of_generic_line(config, rotate_line(line, 0.7))
    assert turned.hyperplane.distance(image.hyperplane) < 1e-8
