"""Tests for exact linear systems, the rational LP and Fourier-Motzkin elimination."""

from fractions import Fraction

import numpy as np
import pytest

from secrecy_toolkit.polyhedral import (
    EliminationStep,
    LinIneq,
    LinSystem,
    eliminate,
    eliminate_all,
    is_feasible,
    is_implied,
    parse_inequality,
    remove_redundant,
    solve_standard_form,
)
from secrecy_toolkit.regions.projection import project_to_region
from secrecy_toolkit.utils.exceptions import InequalityParseError, PolyhedralError


def _box(vars, low=-5, high=5):
    rows = []
    for name in vars:
        rows.append(LinIneq.le({name: 1}, high))
        rows.append(LinIneq.ge({name: 1}, low))
    return rows


def _random_system(rng: np.random.Generator) -> LinSystem:
    """A bounded system over x, y, z with small integer data."""
    vars = ("x", "y", "z")
    rows = _box(vars)
    for _ in range(int(rng.integers(2, 6))):
        coeffs = {name: int(c) for name, c in zip(vars, rng.integers(-3, 4, size=3))}
        rows.append(LinIneq.le(coeffs, int(rng.integers(-4, 9))))
    return LinSystem(vars, tuple(rows))


def _random_rate_system(rng: np.random.Generator) -> LinSystem:
    """A bounded system over R1, R2 and three hidden variables s, t, w."""
    vars = ("R1", "R2", "s", "t", "w")
    rows = _box(vars)
    for _ in range(int(rng.integers(3, 7))):
        coeffs = {name: int(c) for name, c in zip(vars, rng.integers(-3, 4, size=5))}
        rows.append(LinIneq.le(coeffs, int(rng.integers(-2, 9))))
    return LinSystem(vars, tuple(rows))


def _exact_vertices(system: LinSystem) -> set[tuple[Fraction, Fraction]]:
    return set(project_to_region(system).exact_vertices or ())


class TestParsing:
    def test_parse_rational_coefficients(self):
        row = parse_inequality("1/2*R1 - R2 + 3 x <= 7/3")
        assert row.coeffs == {"R1": Fraction(1, 2), "R2": Fraction(-1), "x": Fraction(3)}
        assert row.rhs == Fraction(7, 3)

    def test_parse_ge_flips_sign(self):
        row = parse_inequality("R1 + R2 >= 1")
        assert row.coeffs == {"R1": -1, "R2": -1}
        assert row.rhs == -1

    def test_parse_equality(self):
        row = parse_inequality("R1 - Ra = 0")
        assert row.relation == "=="

    def test_parse_error_carries_line(self):
        with pytest.raises(InequalityParseError) as info:
            LinSystem.parse("R1 <= 1\nR1 ++* <= 2\n")
        assert info.value.line_no == 2

    def test_missing_relation(self):
        with pytest.raises(InequalityParseError):
            parse_inequality("R1 + R2")

    def test_format_parses_back(self):
        text = "1*R1 + -1*R2 <= 1/3\n2*R2 == 5"
        system = LinSystem.parse(text)
        assert LinSystem.parse(system.format()).ineqs == system.ineqs

    def test_undeclared_variable(self):
        with pytest.raises(PolyhedralError):
            LinSystem(("x",), (LinIneq.le({"y": 1}, 0),))


class TestLinearProgram:
    def test_simple_optimum(self):
        # min -x - y  s.t.  x + y + s = 4, x + 3y + t = 6
        result = solve_standard_form([-1, -1, 0, 0], [[1, 1, 1, 0], [1, 3, 0, 1]], [4, 6])
        assert result.status == "optimal"
        assert result.value == -4

    def test_infeasible(self):
        result = solve_standard_form([1], [[1]], [-1])
        assert result.status == "infeasible"

    def test_unbounded(self):
        result = solve_standard_form([-1, 0], [[1, -1]], [0])
        assert result.status == "unbounded"

    def test_is_implied(self):
        rows = [LinIneq.le({"x": 1}, 1), LinIneq.le({"y": 1}, 2)]
        assert is_implied(LinIneq.le({"x": 1, "y": 1}, 3), rows, ("x", "y"))
        assert not is_implied(LinIneq.le({"x": 1, "y": 1}, Fraction(5, 2)), rows, ("x", "y"))

    def test_is_feasible_with_fixed_values(self):
        system = LinSystem.parse("x + y <= 2\nx - y <= 0\ny <= 3")
        assert is_feasible(system, {"x": 1})
        assert not is_feasible(system, {"x": 2})
        # one-sided bounds alone are always satisfiable
        assert is_feasible(LinSystem.parse("x <= 1\ny <= 2"))


class TestElimination:
    def test_pairing(self):
        system = LinSystem.parse("x - t <= 0\nt <= 1\n-t <= 0\ny + t <= 3")
        reduced = eliminate(system, "t")
        assert set(reduced.vars) == {"x", "y"}
        assert reduced.contains({"x": 1, "y": 2})
        assert not reduced.contains({"x": 2, "y": 0})

    def test_equality_substitution(self):
        system = LinSystem.parse("a - b - c == 0\nb <= 1\nc <= 2\n-b <= 0\n-c <= 0")
        reduced = eliminate_all(system, ["b", "c"])
        assert reduced.contains({"a": 3})
        assert not reduced.contains({"a": Fraction(301, 100)})
        assert not reduced.contains({"a": -1})

    def test_infeasible_system_collapses(self):
        system = LinSystem.parse("x - t <= -1\nt - x <= -1")
        reduced = eliminate_all(system, ["t"])
        assert reduced.is_infeasible

    def test_unknown_variable(self):
        with pytest.raises(PolyhedralError):
            eliminate(LinSystem.parse("x <= 1"), "q")

    def test_trace_records_every_step(self):
        steps: list[EliminationStep] = []
        system = LinSystem.parse("x - s <= 0\ns - t <= 0\nt <= 1\n-x <= 0\n-s <= 0")
        eliminate_all(system, ["s", "t"], trace=steps.append)
        assert [s.index for s in steps] == [1, 2]
        assert {s.variable for s in steps} == {"s", "t"}
        assert all("eliminate" in s.header() for s in steps)

    def test_explicit_order_must_match(self):
        system = LinSystem.parse("x - s <= 0\ns <= 1")
        with pytest.raises(PolyhedralError):
            eliminate_all(system, ["s"], order=["x"])


class TestRedundancy:
    def test_drops_implied_rows(self):
        system = LinSystem.parse("x <= 1\ny <= 1\nx + y <= 3\n-x <= 0\n-y <= 0")
        pruned = remove_redundant(system)
        assert len(pruned.ineqs) == 4
        assert parse_inequality("x + y <= 3") not in pruned.ineqs

    def test_keeps_same_solution_set(self):
        rng = np.random.default_rng(4)
        system = _random_system(rng)
        pruned = remove_redundant(system)
        for _ in range(30):
            point = {name: Fraction(int(v), 2) for name, v in zip(system.vars, rng.integers(-12, 13, size=3))}
            assert pruned.contains(point) == system.contains(point)


class TestSoundness:
    def test_projection_agrees_with_lifted_feasibility(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            system = _random_system(rng)
            projected = eliminate_all(system, ["z"])
            for _ in range(12):
                x, y = (Fraction(int(v), 2) for v in rng.integers(-12, 13, size=2))
                assert projected.contains({"x": x, "y": y}) == is_feasible(system, {"x": x, "y": y})

    def test_order_independent(self):
        rng = np.random.default_rng(31)
        for _ in range(40):
            system = _random_rate_system(rng)
            hidden = ["s", "t", "w"]
            order = [str(v) for v in rng.permutation(hidden)]
            first = eliminate_all(system, hidden, order=order)
            second = eliminate_all(system, hidden, order=order[::-1])
            assert _exact_vertices(first) == _exact_vertices(second)

    def test_added_row_never_enlarges(self):
        rng = np.random.default_rng(32)
        for _ in range(40):
            system = _random_rate_system(rng)
            extra = LinIneq.le(
                {name: int(c) for name, c in zip(system.vars, rng.integers(-3, 4, size=5))},
                int(rng.integers(-2, 9)),
            )
            tighter = LinSystem(system.vars, system.ineqs + (extra,))
            hidden = ["s", "t", "w"]
            base = eliminate_all(system, hidden)
            narrowed = eliminate_all(tighter, hidden)
            points = [
                {"R1": Fraction(int(a), 2), "R2": Fraction(int(b), 2)}
                for a, b in rng.integers(0, 11, size=(30, 2))
            ]
            points += [
                {"R1": x, "R2": y} for x, y in _exact_vertices(narrowed)
            ]
            for point in points:
                if narrowed.contains(point):
                    assert base.contains(point)

    def test_two_variable_projection(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            system = _random_system(rng)
            projected = eliminate_all(system, ["y", "z"])
            for v in range(-12, 13):
                x = Fraction(v, 2)
                assert projected.contains({"x": x}) == is_feasible(system, {"x": x})
