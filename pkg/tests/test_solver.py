"""End-to-end solving on interval division instances."""
from fractions import Fraction as Q

import pytest

from fairslice.errors import (
    AssumptionViolationError,
    BudgetExceededError,
)
from fairslice.io import result_to_json
from fairslice.preferences import (
    Density,
    PreferenceOracle,
    division_from_point,
    rejection_accepts,
)
from fairslice.solver import (
    Problem,
    default_max_depth,
    envy_gap,
    extract_assignment,
    solve,
    verify_envy_free,
)
from fairslice.sperner import Witness

UNIFORM = Density.uniform()
LEFT_HEAVY = Density.from_breaks([Q(0), Q(1, 2), Q(1)], [Q(3, 2), Q(1, 2)])
RIGHT_HEAVY = Density.from_breaks([Q(0), Q(1, 2), Q(1)], [Q(1, 2), Q(3, 2)])


def rejection(density: Density) -> PreferenceOracle:
    return PreferenceOracle("rejection", density)


def attraction(density: Density) -> PreferenceOracle:
    return PreferenceOracle("attraction", density)


def test_problem_validates():
    with pytest.raises(ValueError):
        Problem(n=0, oracles=())
    with pytest.raises(ValueError):
        Problem(n=2, oracles=(attraction(UNIFORM),))
    p = Problem(n=2, oracles=(attraction(UNIFORM), rejection(UNIFORM)))
    assert p.measure_based
    custom = PreferenceOracle("custom", fn=lambda d: rejection_accepts(UNIFORM, d))
    assert not Problem(n=2, oracles=(attraction(UNIFORM), custom)).measure_based


def test_extract_assignment_center_all_attraction():
    # Hand-built witness at the equal-thirds point: each player is drawn to
    # a piece of measure exactly 1/3, so all three conditions hold.
    x_star = (Q(1, 3), Q(1, 3), Q(1, 3))
    witness = Witness(simplex=(0, 1, 2), labels=((1,), (2,), (3,)),
                      det_value=Q(1), sdr=(1, 2, 3))
    owners = {0: 1, 1: 2, 2: 3}
    oracles = [attraction(UNIFORM)] * 3
    assignment = extract_assignment(witness, owners, x_star, oracles)
    division = assignment.division
    assert division.cuts == (Q(0), Q(1, 3), Q(2, 3), Q(1))
    assert assignment.candidates == {1: 1, 2: 2, 3: 3}
    assert assignment.pieces[1] == (Q(0), Q(1, 3))
    assert assignment.pieces[3] == (Q(2, 3), Q(1))
    assert assignment.complete
    conditions = verify_envy_free(division, assignment, oracles)
    assert conditions["all"]
    assert envy_gap(division, assignment, oracles) == 0


def test_extract_assignment_halves_rejection():
    x_star = (Q(1, 2), Q(1, 2))
    witness = Witness(simplex=(0, 1), labels=((1,), (2,)),
                      det_value=Q(1), sdr=(1, 2))
    owners = {0: 1, 1: 2}
    oracles = [rejection(UNIFORM)] * 2
    assignment = extract_assignment(witness, owners, x_star, oracles)
    assert assignment.pieces[1] == (Q(0), Q(1, 2))
    assert assignment.pieces[2] == (Q(1, 2), Q(1))
    assert verify_envy_free(assignment.division, assignment, oracles)["all"]


def test_extract_assignment_rejects_duplicate_owners():
    witness = Witness(simplex=(0, 1), labels=((1,), (2,)),
                      det_value=Q(1), sdr=(1, 2))
    with pytest.raises(ValueError):
        extract_assignment(witness, {0: 1, 1: 1}, (Q(1, 2), Q(1, 2)),
                           [rejection(UNIFORM)] * 2)


def test_solve_two_rejecters_converges_exactly():
    problem = Problem(n=2, oracles=(rejection(UNIFORM), rejection(LEFT_HEAVY)))
    result = solve(problem, max_depth=8, target_gap=Q(0))
    assert result.status == "exact"
    assert result.trace[-1].depth == 4
    assert result.division.cuts[1] == Q(13, 32)
    assert [r.envy_gap for r in result.trace] == [Q(1, 4), Q(1, 4), Q(1, 16), Q(0)]
    assert [r.witness_count for r in result.trace] == [1, 1, 3, 3]
    assert result.conditions["all"]
    meshes = [r.mesh for r in result.trace]
    assert all(a > b for a, b in zip(meshes, meshes[1:]))


def test_solve_identical_rejecters_narrows_on_half():
    # Equal uniform halves make every midpoint cut degenerate for one side,
    # so the cut can only approach 1/2, never land on it.
    problem = Problem(n=2, oracles=(rejection(UNIFORM), rejection(UNIFORM)))
    result = solve(problem, max_depth=8, target_gap=Q(0))
    assert result.status == "approximate"
    cut = result.division.cuts[1]
    assert cut == Q(257, 512)
    assert abs(cut - Q(1, 2)) <= Q(1, 2**8)


def test_solve_mixed_pair_exact_at_first_depth():
    problem = Problem(n=2, oracles=(attraction(UNIFORM), rejection(UNIFORM)))
    result = solve(problem, max_depth=3)
    assert result.status == "exact"
    assert result.trace[-1].depth == 1
    assert result.division.cuts == (Q(0), Q(1, 4), Q(1))
    assert result.envy_gap == 0
    assert result.assignment.complete
    assert result.assignment.pieces[1] == (Q(1, 4), Q(1))
    assert result.assignment.pieces[2] == (Q(0), Q(1, 4))


def test_solve_three_attractors_tightens():
    problem = Problem(
        n=3,
        oracles=(attraction(UNIFORM), attraction(LEFT_HEAVY), attraction(RIGHT_HEAVY)),
    )
    result = solve(problem, max_depth=3, target_gap=Q(0))
    assert result.status == "approximate"
    assert result.envy_gap == Q(7, 36)
    assert [r.mesh for r in result.trace] == [Q(2, 3), Q(7, 18), Q(13, 54)]
    gaps = [r.envy_gap for r in result.trace]
    assert gaps[-1] <= gaps[0]
    assert result.conditions["injective"]


def test_solve_custom_oracle_has_no_gap_number():
    custom = PreferenceOracle("custom", fn=lambda d: rejection_accepts(UNIFORM, d))
    problem = Problem(n=2, oracles=(custom, custom))
    result = solve(problem, max_depth=2)
    assert result.envy_gap is None
    assert all(r.envy_gap is None for r in result.trace)
    assert result.status == "approximate"


def test_solve_composite_size_switches_to_matching():
    problem = Problem(n=6, oracles=tuple(attraction(UNIFORM) for _ in range(6)))
    with pytest.warns(UserWarning, match="composite"):
        result = solve(problem, max_depth=1)
    assert result.mode == "matching"
    assert result.trace[-1].simplex_count == 720


def test_solve_budget_stops_refinement():
    problem = Problem(n=2, oracles=(rejection(UNIFORM), rejection(LEFT_HEAVY)))
    result = solve(problem, max_depth=8, target_gap=Q(0), budget=4)
    assert result.status == "budget-exhausted"
    assert result.trace[-1].depth == 2
    with pytest.raises(BudgetExceededError):
        solve(problem, max_depth=8, budget=1)


def test_solve_argument_validation():
    problem = Problem(n=2, oracles=(rejection(UNIFORM), rejection(UNIFORM)))
    with pytest.raises(ValueError):
        solve(problem, max_depth=0)
    with pytest.raises(ValueError):
        solve(problem, mode="telepathy")


def test_solve_rejects_broken_oracle_upfront():
    poisoned = PreferenceOracle("custom", fn=lambda d: {None})
    problem = Problem(n=2, oracles=(poisoned, rejection(UNIFORM)))
    with pytest.raises(AssumptionViolationError) as err:
        solve(problem, max_depth=2)
    assert err.value.player == 1


def test_solve_reruns_are_identical():
    problem = Problem(n=2, oracles=(rejection(UNIFORM), rejection(LEFT_HEAVY)))
    first = result_to_json(solve(problem, max_depth=6))
    second = result_to_json(solve(problem, max_depth=6))
    assert first == second


def test_default_max_depth_schedule():
    assert default_max_depth(2) == 7
    assert default_max_depth(3) == 7
    assert default_max_depth(4) == 2
    assert default_max_depth(5) == 2
    assert default_max_depth(6) == 1
