""" Test singularity records and transitions along real pencils """

import numpy as np
import pytest

from minitwistor_tools.classifier import (
    classify_member,
    discriminant_coeffs,
    expected_genus_drop,
    genus_drop_check,
    non_real_count,
    records_sigma_invariant,
    trace_transitions,
)
from minitwistor_tools.curve import make_branch_config, make_quarter
from minitwistor_tools.family import solve_member
from minitwistor_tools.pencils import (
    all_divisions,
    central_division,
    family_member,
    parse_division,
)
from minitwistor_tools.projective import Hyperplane

SYMMETRIC = {
    2: (-3.0, -1.0, 1.0, 3.0),
    3: (-5.0, -3.0, -1.0, 1.0, 3.0, 5.0),
}


def test_left_end_nodes():
    """ h_L has real nodes at r₁, r₂ """
    config = make_branch_config(SYMMETRIC[2])
    member = family_member(config, central_division(2), 0.0)
    records = classify_member(config, member)
    assert [record.kind for record in records] == ["node-real", "node-real"]
    located = sorted(record.point.z.real for record in records)
    assert np.allclose(located, [-3.0, -1.0], atol=1e-8)
    assert genus_drop_check(config, member) == 2


def test_side_hyperplane_drop():
    """ (z - a₁)(z - λ) has one node and drops the genus by g """
    config = make_branch_config(SYMMETRIC[2])
    hyperplane = Hyperplane([6.0, 5.0, 1.0], 0.0)
    records = classify_member(config, hyperplane)
    assert len(records) == 1
    assert records[0].kind == "node-real"
    assert genus_drop_check(config, hyperplane) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_real_members_have_paired_records(n):
    """ Non-real records come in σ-pairs and the total drop is n """
    config = make_branch_config(SYMMETRIC[n])
    for division in all_divisions(n):
        for s in (0.3, 0.9, 2.0):
            member = family_member(config, division, s)
            records = classify_member(config, member)
            assert records_sigma_invariant(records)
            assert genus_drop_check(config, member) == n


def test_central_discriminant():
    """ g = 1: the central discriminant 4 + 56w + 4w² has no positive zeros """
    config = make_branch_config(SYMMETRIC[2])
    coeffs = discriminant_coeffs(config, central_division(2))
    assert np.allclose(coeffs, [4.0, 56.0, 4.0])
    trace = trace_transitions(config, central_division(2), samples=100)
    assert trace.criticals == []
    assert trace.endpoints_real


def test_outer_division_transitions():
    """ {1,4}|{2,3}: collisions at infinity (s = 1) and at z = 0 (s = 3) """
    config = make_branch_config(SYMMETRIC[2])
    division = parse_division("1,4", 2)
    assert np.allclose(discriminant_coeffs(config, division), [36.0, -40.0, 4.0])

    trace = trace_transitions(config, division)
    assert [critical.s for critical in trace.criticals] == pytest.approx(
        [1.0, 3.0], abs=1e-9
    )
    assert [regime.label for regime in trace.regimes] == [
        "real-nodes",
        "conjugate-pair",
        "real-nodes",
    ]
    assert [regime.non_real for regime in trace.regimes] == [0, 2, 0]

    at_infinity, at_zero = trace.criticals
    assert not at_infinity.point.is_finite
    assert at_zero.point.is_finite
    assert abs(at_zero.point.z) < 1e-6
    assert at_zero.circle is not None
    assert at_zero.circle.index == 2


def test_trace_rows():
    """ Rows carry the discriminant, the non-real count and the regime """
    config = make_branch_config(SYMMETRIC[2])
    division = parse_division("1,4", 2)
    trace = trace_transitions(config, division, grid=[0.5, 2.0, 5.0])
    rows = trace.rows(config)
    assert [row["non_real"] for row in rows] == [0, 2, 0]
    assert rows[0]["discriminant"] == pytest.approx(36.0 - 10.0 + 0.25)
    assert [row["regime"] for row in rows] == [
        "real-nodes",
        "conjugate-pair",
        "real-nodes",
    ]


def test_genus_two_central_criticals():
    """ The two criticals of the symmetric g = 2 pencil pair up as (u, 1/u) """
    config = make_branch_config(SYMMETRIC[3])
    division = central_division(3)
    trace = trace_transitions(config, division)
    values = [critical.s for critical in trace.criticals]
    assert len(values) == 2
    assert values[0] * values[1] == pytest.approx(1.0, abs=1e-8)
    assert non_real_count(config, division, 1.0) == 2
    assert trace.endpoints_real


@pytest.mark.parametrize("n", [2, 3])
def test_tangent_member_drops_genus_g(n):
    """ q + q̄ + 2D′ is a double cover of genus g made rational by g nodes """
    config = make_branch_config(SYMMETRIC[n])
    member = solve_member(config, make_quarter(config), 0.3 + 1.5j)
    assert expected_genus_drop(config, member.restriction(config)) == n - 1
    assert genus_drop_check(config, member) == n - 1
