import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from walkgen.fitness import (
    MAX_COST,
    Cost,
    FitnessConfig,
    atom_distance,
    bool_distance,
    combine,
    goal_cost,
)
from walkgen.goals import extract_goals
from walkgen.interpreter import execute
from walkgen.parser import parse_program

PAPER = FitnessConfig(combinator="paper")
CORRECTED = FitnessConfig()


def test_satisfied_equality_scores_zero():
    assert atom_distance("==", 7, 7) == 0


def test_less_than_distance():
    assert atom_distance("<", 5, 3, FitnessConfig(k=1)) == 3
    assert atom_distance("<=", 5, 3) == 3
    assert atom_distance("<=", 3, 3) == 0


def test_greater_than_distance_mirrors_less_than():
    assert atom_distance(">", 3, 5) == 3
    assert atom_distance(">=", 3, 5) == 3
    assert atom_distance(">", 3, 3) == 1


def test_equality_and_inequality_distances():
    assert atom_distance("==", 2, 9) == 8
    assert atom_distance("!=", 4, 4) == 1
    assert atom_distance("!=", 4, 5) == 0


def test_false_boolean_leaf_scores_k():
    assert bool_distance(False) == 1
    assert bool_distance(False, FitnessConfig(k=0.5)) == 0.5
    assert bool_distance(True) == 0


def test_combinator_modes():
    assert combine("and", 3, 0, PAPER) == 0
    assert combine("and", 3, 0, CORRECTED) == 3
    assert combine("or", 3, 2, PAPER) == 5
    assert combine("or", 3, 2, CORRECTED) == 2
    for cfg in (PAPER, CORRECTED):
        assert combine("or", 0, 0, cfg) == combine("and", 0, 0, cfg) == 0


@pytest.mark.parametrize("kwargs", [{"k": 0}, {"k": -1}, {"combinator": "tracey"}])
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        FitnessConfig(**kwargs)


def test_unknown_operator_rejected():
    with pytest.raises(ValueError):
        atom_distance("<>", 1, 2)
    with pytest.raises(ValueError):
        combine("xor", 1, 2)


def test_equilateral_goal_is_covered_by_3_3_3(tri_int):
    goals = extract_goals(tri_int)
    goal = goals.find(4, "decision", True)
    assert str(goal.expr) == "B == C"
    cost = goal_cost(goal, execute(tri_int, (3, 3, 3)))
    assert cost == Cost(0.0, True) and cost.covered


def test_unreached_node_scores_max_cost(tri_int):
    goals = extract_goals(tri_int)
    cost = goal_cost(goals.find(4, "decision", True), execute(tri_int, (-1, 2, 3)))
    assert cost.value == MAX_COST and not cost.reached and not cost.covered
    assert math.isinf(MAX_COST) and MAX_COST > 1e300


def test_sample_decision_false_on_all_ones(sample):
    goal = extract_goals(sample)[1]
    assert goal_cost(goal, execute(sample, (1, 1, 1))).value == 2
    assert goal_cost(goal, execute(sample, (1, 1, 1)), PAPER).value == 6


def test_loop_node_uses_best_occurrence():
    m = parse_program("var n: int32\nlocal i: int\nwhile (i < n) { i = i + 1; }")
    goals = extract_goals(m)
    stop = goals.find(0, "decision", False)
    trace = execute(m, (3,))
    assert len(trace.occurrences) == 4
    assert goal_cost(stop, trace).value == 0
    enter = goals.find(0, "decision", True)
    assert goal_cost(enter, execute(m, (-4,))).value == 5


small = st.integers(-50, 50)


@given(small, small, small)
def test_equality_distance_is_monotone(a, b, c):
    # moving a towards b never increases the distance
    if abs(c - b) <= abs(a - b):
        assert atom_distance("==", c, b) <= atom_distance("==", a, b)


@given(small, small, small)
def test_less_than_distance_is_monotone_in_left_operand(a, b, delta):
    lower = a - abs(delta)
    for op in ("<", "<="):
        assert atom_distance(op, lower, b) <= atom_distance(op, a, b)


@given(st.sampled_from(["==", "!=", "<", "<=", ">", ">="]), small, small, st.floats(0.001, 10))
def test_atom_distance_zero_iff_satisfied(op, a, b, k):
    from walkgen.syntax import compare

    d = atom_distance(op, a, b, FitnessConfig(k=k))
    assert d >= 0
    assert (d == 0) == compare(op, a, b)
    if d:
        assert d >= k
