from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from walkgen.interpreter import (
    LOOP_BUDGET_EXCEEDED,
    NORMAL,
    RUNTIME_ERROR,
    Interpreter,
    execute,
    trunc_div,
    trunc_mod,
)
from walkgen.parser import parse_program
from walkgen.syntax import evaluate_cond


def test_equilateral_triangle_reaches_the_last_equality_check(tri_int):
    trace = execute(tri_int, (3, 3, 3))
    assert trace.status == NORMAL
    assert [o.node_id for o in trace.occurrences] == [0, 1, 2, 3, 4]
    assert trace.occurrences[-1].outcome is True
    assert "equilateral" in trace.targets


def test_sample_single_occurrence_snapshot(sample):
    trace = execute(sample, (1, 1, 1))
    (occ,) = trace.occurrences
    assert occ.outcome is True
    assert occ.operands == ((1, 0), (1, 0), (1, 0))


def test_conditions_are_not_short_circuited(sample):
    (occ,) = execute(sample, (-5, 7, 9)).occurrences
    assert occ.outcome is False
    assert occ.operands == ((-5, 0), (7, 0), (9, 0))


def test_division_by_zero_truncates_the_trace():
    m = parse_program("var x: int32\nvar y: int32\nif (x > 0) { }\nif (x / y > 1) { }\nif (y == 0) { }")
    trace = execute(m, (4, 0))
    assert trace.status == RUNTIME_ERROR
    assert [o.node_id for o in trace.occurrences] == [0]


def test_loop_budget_counts_total_iterations():
    m = parse_program("var n: int32\nlocal i: int\nwhile (i < n) { i = i + 1; }\nif (i == n) { }")
    assert execute(m, (5,), loop_budget=5).status == NORMAL
    trace = execute(m, (6,), loop_budget=5)
    assert trace.status == LOOP_BUDGET_EXCEEDED
    assert all(o.node_id == 0 for o in trace.occurrences)
    assert len(trace.occurrences) == 6


def test_input_domain_is_enforced():
    m = parse_program("var r: real(0, 10, 2)\nif (r > 1) { }")
    with pytest.raises(ValueError):
        execute(m, ("10.01",))
    with pytest.raises(ValueError):
        execute(m, ("1.234",))
    with pytest.raises(ValueError):
        execute(m, ())


def test_real_arithmetic_truncates_toward_zero():
    src = """
    var a: real(-100, 100, 2)
    var b: real(-100, 100, 2)
    local q: real(2)
    local p: real(1)
    q = a / b;
    p = a * b;
    if (q == p) { }
    """
    m = parse_program(src)
    (occ,) = execute(m, ("-1.00", "3.00")).occurrences
    q, p = occ.operands[0]
    assert q == Fraction(-33, 100)
    assert p == Fraction(-3)
    (occ,) = execute(m, ("1.25", "1.25")).occurrences
    assert occ.operands[0][1] == Fraction(15, 10)


@given(st.integers(-1000, 1000), st.integers(-1000, 1000).filter(bool))
def test_truncating_division_matches_c(a, b):
    q, r = trunc_div(a, b), trunc_mod(a, b)
    assert q * b + r == a
    assert abs(r) < abs(b)
    assert r == 0 or (r > 0) == (a > 0)
    assert q == int(a / b)


@given(st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20)))
def test_trace_is_pure_and_outcomes_match_snapshots(tri_int, values):
    run = Interpreter(tri_int)
    first, second = run.run(values), run.run(values)
    assert first == second
    for occ in first.occurrences:
        cond = tri_int.decisions[occ.node_id].condition
        assert evaluate_cond(cond, occ.atom_truth) == occ.outcome
