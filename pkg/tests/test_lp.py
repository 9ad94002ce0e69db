from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from bocce.lp import (
    EQ, FLOAT, GE, INF, LE, RATIONAL, Float, LinearProgram, Status,
    feasible, max_violation, parse_mode, solve,
)

MODES = [RATIONAL, FLOAT]


@pytest.mark.parametrize("mode", MODES)
def test_single_variable_max(mode):
    out = solve(LinearProgram(1, objective=[1]).add([1], LE, 1), mode)
    assert out.status is Status.OPTIMAL
    assert out.x == (1,) and out.value == 1


@pytest.mark.parametrize("mode", MODES)
def test_simplex_value(mode):
    out = solve(LinearProgram(2, objective=[1, 1]).add([1, 1], LE, 1), mode)
    assert out.optimal and out.value == 1


@pytest.mark.parametrize("mode", MODES)
def test_infeasible(mode):
    lp = LinearProgram(1).add([1], GE, 1).add([1], LE, 0)
    assert solve(lp, mode).status is Status.INFEASIBLE
    assert not feasible(lp, mode)


@pytest.mark.parametrize("mode", MODES)
def test_unbounded(mode):
    lp = LinearProgram(2, objective=[1, 0]).add([1, -1], LE, 1)
    assert solve(lp, mode).status is Status.UNBOUNDED


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize(
    "lp,want",
    [
        (LinearProgram(1).add([1], EQ, 0), True),
        (LinearProgram(1, lower=[-INF]).add([1], GE, 1).add([-1], GE, 0), False),
        (LinearProgram(2).add([1, 1], EQ, 1), True),
    ],
)
def test_feasibility_examples(mode, lp, want):
    assert feasible(lp, mode) is want


@pytest.mark.parametrize("mode", MODES)
def test_free_and_bounded_variables(mode):
    # minimize |shifted| style problem: max -x - y with x in [-3, 2], y free, y >= -x - 5
    lp = LinearProgram(2, objective=[-1, -1], lower=[-3, -INF], upper=[2, INF])
    lp.add([1, 1], GE, -5)
    out = solve(lp, mode)
    assert out.optimal and out.value == 5
    assert max_violation(lp, out.x) <= (0 if mode is RATIONAL else 1e-9)


def test_negative_rhs_and_equalities():
    lp = LinearProgram(3, objective=[1, 2, -1])
    lp.add([1, 1, 1], EQ, 4).add([1, -1, 0], GE, -2).add([0, 1, 1], LE, 3)
    out = solve(lp, RATIONAL)
    assert out.optimal
    assert max_violation(lp, out.x) == 0
    assert out.value == 7 and out.x == (1, 3, 0)


def test_bland_terminates_on_cycling_example():
    # classic instance on which the largest-coefficient rule cycles
    lp = LinearProgram(4, objective=[Fraction(3, 4), -20, Fraction(1, 2), -6])
    lp.add([Fraction(1, 4), -8, -1, 9], LE, 0)
    lp.add([Fraction(1, 2), -12, Fraction(-1, 2), 3], LE, 0)
    lp.add([0, 0, 1, 0], LE, 1)
    for mode in MODES:
        out = solve(lp, mode)
        assert out.optimal and out.value == pytest.approx(Fraction(5, 4), abs=1e-12)


def test_rational_mode_returns_fractions():
    out = solve(LinearProgram(2, objective=[1, 1]).add([3, 1], LE, 1).add([1, 3], LE, 1), RATIONAL)
    assert out.value == Fraction(1, 2)
    assert all(type(v) is Fraction for v in out.x)


@pytest.mark.parametrize(
    "build",
    [
        lambda: LinearProgram(0),
        lambda: LinearProgram(2, objective=[1]),
        lambda: LinearProgram(2).add([1], LE, 1).validate(),
        lambda: LinearProgram(1, lower=[2], upper=[1]),
        lambda: LinearProgram(1).add([1], "<", 1).validate(),
    ],
)
def test_malformed_programs_rejected(build):
    with pytest.raises(ValueError):
        build()


def test_parse_mode():
    assert parse_mode("rational") is RATIONAL
    assert parse_mode("float") == FLOAT
    assert parse_mode("float:1e-6") == Float(1e-6)
    assert str(Float(1e-6)) == "float:1e-06"
    with pytest.raises(ValueError):
        parse_mode("double")
    with pytest.raises(ValueError):
        Float(0)


small_rational = st.builds(Fraction, st.integers(-10, 10), st.integers(1, 10))


@st.composite
def random_programs(draw):
    n = draw(st.integers(1, 8))
    k = draw(st.integers(1, 12))
    lp = LinearProgram(n, objective=draw(st.lists(small_rational, min_size=n, max_size=n)))
    for _ in range(k):
        coeffs = draw(st.lists(small_rational, min_size=n, max_size=n))
        lp.add(coeffs, draw(st.sampled_from([LE, LE, GE, EQ])), draw(small_rational))
    return lp


def _as_float(lp):
    out = LinearProgram(lp.n_vars, objective=[float(c) for c in lp.objective])
    for c in lp.constraints:
        out.add([float(a) for a in c.coeffs], c.rel, float(c.rhs))
    return out


@given(random_programs())
def test_rational_float_cross_agreement(lp):
    exact = solve(lp, RATIONAL)
    approx = solve(_as_float(lp), FLOAT)
    assert exact.status is approx.status
    if exact.optimal:
        assert abs(float(exact.value) - approx.value) <= 10 * FLOAT.eps * max(1, abs(exact.value))
        assert max_violation(lp, exact.x) == 0
        assert max_violation(_as_float(lp), approx.x) <= 1e-8


@given(random_programs())
def test_deterministic(lp):
    for mode in MODES:
        assert solve(lp, mode) == solve(lp, mode)
