""" Test the period lattice, the Abel-Jacobi map and the doubling lift """

import numpy as np
import pytest

from minitwistor_tools.curve import CurvePoint, make_branch_config, make_quarter
from minitwistor_tools.family import solve_member
from minitwistor_tools.jacobian import (
    JacobianPoint,
    PeriodLattice,
    abel_jacobi,
    abel_residual,
    beta,
    boundary_samples,
    compute_periods,
    doubling_candidates,
    doubling_lift,
    lll_reduce,
    riemann_residual,
    seifert_lift,
)
from minitwistor_tools.pencils import all_divisions, family_member

SYMMETRIC = {
    1: (-1.0, 1.0),
    2: (-3.0, -1.0, 1.0, 3.0),
    3: (-5.0, -3.0, -1.0, 1.0, 3.0, 5.0),
}


def test_lll_reduce():
    """ Reduction keeps the lattice and shortens the basis """
    basis = np.array([[1.0, 4.0], [0.0, 1.0]])
    reduced = lll_reduce(basis)
    assert abs(np.linalg.det(reduced)) == pytest.approx(1.0)
    assert np.max(np.linalg.norm(reduced, axis=0)) == pytest.approx(1.0)
    coordinates = np.linalg.solve(basis, reduced)
    assert np.allclose(coordinates, np.round(coordinates))


def test_genus_zero():
    """ n = 1 has a trivial Jacobian """
    lattice = PeriodLattice(make_branch_config(SYMMETRIC[1]))
    assert lattice.genus == 0
    assert lattice.riemann_residual() == 0.0
    assert lattice.distance(np.zeros(0)) == 0.0
    assert riemann_residual(np.zeros((0, 0))) == 0.0


@pytest.mark.parametrize("n", [2, 3])
def test_period_matrix(n):
    """ Riemann relation, full real rank and lattice membership of periods """
    lattice = PeriodLattice(make_branch_config(SYMMETRIC[n]))
    genus = n - 1
    assert lattice.matrix.shape == (genus, 2 * genus)
    assert lattice.riemann_residual() < 1e-8
    assert lattice.real_rank_condition() < 1e8
    assert lattice.real_generators().shape == (genus, genus)

    combination = lattice.matrix[:, 0] - 2.0 * lattice.matrix[:, -1]
    assert lattice.distance(combination) < 1e-10
    assert lattice.distance(0.5 * lattice.matrix[:, 0]) > 1e-3

    assert np.allclose(lattice.matrix, 2.0 * lattice.half_periods[: 2 * genus].T)
    assert np.allclose(compute_periods(lattice.config).matrix, lattice.matrix)

    point = JacobianPoint(0.25 * lattice.matrix[:, 0] + lattice.matrix[:, 1])
    reduced = lattice.reduce(point)
    assert lattice.distance(point.value - reduced.value) < 1e-10
    assert np.linalg.norm(reduced.value) == pytest.approx(lattice.distance(point.value))


@pytest.mark.parametrize("n", [2, 3])
def test_ramification_values(n):
    """ 𝔞(r₁) = 0 and 2𝔞(rᵢ) lies in the lattice """
    config = make_branch_config(SYMMETRIC[n])
    lattice = PeriodLattice(config)
    assert np.allclose(lattice.ramification_value(1), 0.0)
    for index in range(1, 2 * n + 1):
        value = lattice.ramification_value(index)
        point = CurvePoint.finite(config.branch_points[index - 1], 0j)
        assert np.allclose(lattice.abel_point(point), value)
        assert lattice.distance(2.0 * value) < 1e-9


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("s", [0.4, 1.0, 2.5])
def test_abel_theorem(n, s):
    """ Hyperplane sections are linearly equivalent to zero """
    config = make_branch_config(SYMMETRIC[n])
    lattice = PeriodLattice(config)
    for division in all_divisions(n):
        member = family_member(config, division, s)
        assert abel_residual(lattice, member) < 1e-7


@pytest.mark.parametrize("n", [2, 3])
def test_beta_is_real(n):
    """ β(q) = 𝔞(q + q̄) is fixed by the real structure """
    config = make_branch_config(SYMMETRIC[n])
    lattice = PeriodLattice(config)
    point = make_quarter(config).interior_point(0.3 + 1.2j)
    value = beta(lattice, point).value
    if n % 2 == 0:
        assert np.max(np.abs(value.imag)) < 1e-12
    else:
        assert np.max(np.abs(value.real)) < 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_doubling_candidates(n):
    """ 2^{2g} solutions of -2x ≡ y, 2^g of them on the real identity component """
    config = make_branch_config(SYMMETRIC[n])
    lattice = PeriodLattice(config)
    genus = n - 1
    target = JacobianPoint(lattice.abel_point(make_quarter(config).seed_point))

    candidates = doubling_candidates(lattice, target)
    assert len(candidates) == 4 ** genus
    assert len(doubling_candidates(lattice, target, real_only=True)) == 2 ** genus
    for candidate in candidates:
        assert lattice.distance(-2.0 * candidate.value - target.value) < 1e-10

    seed = candidates[1]
    lifted = doubling_lift(lattice, target, seed)
    assert lattice.distance(lifted.value - seed.value) < 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3])
def test_seifert_closure(n):
    """ The boundary lift of 𝔞(D′) closes and agrees with the explicit divisors """
    config = make_branch_config(SYMMETRIC[n])
    lattice = PeriodLattice(config)
    surface = seifert_lift(lattice, boundary_samples(make_quarter(config), 12))
    assert surface.closure_defect < 1e-7
    assert np.max(surface.consistency) < 1e-6


@pytest.mark.slow
def test_seifert_interior_matches_solved_members():
    """ Interior lifts agree with 𝔞(D′) of members solved by continuation """
    config = make_branch_config(SYMMETRIC[2])
    quarter = make_quarter(config)
    lattice = PeriodLattice(config)
    surface = seifert_lift(
        lattice, boundary_samples(quarter, 6), quarter=quarter, heights=[0.5, 1.5]
    )
    assert len(surface.interior) == surface.interior_lifts.shape[0] > 0
    assert all(sample.interior for sample in surface.interior)

    for sample, value in zip(surface.interior, surface.interior_lifts):
        doubled = 2.0 * value + beta(lattice, sample.point).value
        assert lattice.distance(doubled) < 1e-7

    for index in (len(surface.interior) // 3, len(surface.interior) - 1):
        z = surface.interior[index].point.z
        member = solve_member(config, quarter, z)
        divisor_value = abel_jacobi(lattice, member.residual_divisor).value
        assert lattice.distance(surface.seed_for(z).value - divisor_value) < 1e-6
