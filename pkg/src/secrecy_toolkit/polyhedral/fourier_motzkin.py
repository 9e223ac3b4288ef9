"""Fourier-Motzkin elimination over exact rationals.

Rows are bucketed by the sign of the eliminated variable's coefficient;
every (lower, upper) pair yields one combined row and var-free rows pass
through. Equalities containing the variable are substituted out first.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from secrecy_toolkit.polyhedral.lp import is_implied
from secrecy_toolkit.polyhedral.system import EQ, LE, LinIneq, LinSystem, combine
from secrecy_toolkit.utils.exceptions import PolyhedralError
from secrecy_toolkit.utils.logging import get_logger

logger = get_logger("polyhedral.fm")


@dataclass
class EliminationStep:
    """Record of one elimination, as written to trace files."""

    index: int
    variable: str
    method: str
    lower: int
    upper: int
    untouched: int
    rows_before: int
    rows_generated: int
    rows_after: int
    system: LinSystem = field(repr=False)

    def header(self) -> str:
        return (
            f"step {self.index}: eliminate {self.variable} by {self.method} "
            f"(lower={self.lower}, upper={self.upper}, untouched={self.untouched}; "
            f"rows {self.rows_before} -> {self.rows_generated} -> {self.rows_after})"
        )


TraceCallback = Callable[[EliminationStep], None]


# =============================================================================
# Syntactic clean-up
# =============================================================================


def _tidy(rows: Iterable[LinIneq]) -> list[LinIneq]:
    """
    Normalize and deduplicate rows.

    Trivially true rows are dropped, a contradiction collapses everything to
    ``0 <= -1``, and parallel inequalities keep only the tightest bound.
    """
    tightest: dict[tuple, LinIneq] = {}
    equalities: dict[LinIneq, None] = {}
    for row in rows:
        norm = row.normalized()
        if norm.is_contradiction:
            return [LinIneq((), Fraction(-1), LE)]
        if norm.is_trivial:
            continue
        if norm.relation == EQ:
            equalities[norm] = None
            continue
        best = tightest.get(norm.terms)
        if best is None or norm.rhs < best.rhs:
            tightest[norm.terms] = norm
    return list(equalities) + list(tightest.values())


def _split(rows: Sequence[LinIneq], var: str):
    lower, upper, untouched = [], [], []
    for row in rows:
        c = row.coeff(var)
        if c == 0:
            untouched.append(row)
        elif c > 0:
            upper.append(row)
        else:
            lower.append(row)
    return lower, upper, untouched


def _substitute_equality(rows: Sequence[LinIneq], var: str) -> Optional[tuple[LinIneq, list[LinIneq]]]:
    pivot = next((r for r in rows if r.relation == EQ and r.coeff(var) != 0), None)
    if pivot is None:
        return None
    c = pivot.coeff(var)
    expr = {k: -v / c for k, v in pivot.terms if k != var}
    const = pivot.rhs / c
    rest = [r.substitute(var, expr, const) for r in rows if r is not pivot]
    return pivot, rest


def _pair(rows: Sequence[LinIneq], var: str) -> tuple[list[LinIneq], int, int, int]:
    lower, upper, untouched = _split(rows, var)
    combined = []
    for lo in lower:
        a_lo = -lo.coeff(var)
        for up in upper:
            a_up = up.coeff(var)
            combined.append(combine(lo, up, a_up, a_lo))
    return untouched + combined, len(lower), len(upper), len(untouched)


# =============================================================================
# Public operations
# =============================================================================


def eliminate(sys: LinSystem, var: str) -> LinSystem:
    """
    Project ``sys`` onto ``vars \\ {var}``.

    An equality containing ``var`` is solved for it and substituted into the
    other rows. Otherwise each lower bound is paired with each upper bound.
    Infeasibility surfaces as the row ``0 <= -1``.
    """
    if var not in sys.vars:
        raise PolyhedralError(f"cannot eliminate unknown variable {var!r}")
    remaining = tuple(v for v in sys.vars if v != var)
    substituted = _substitute_equality(sys.ineqs, var)
    if substituted is not None:
        rows = substituted[1]
    else:
        rows, _, _, _ = _pair(sys.ineqs, var)
    return LinSystem(remaining, tuple(_tidy(rows)))


def remove_redundant(sys: LinSystem) -> LinSystem:
    """Drop every inequality implied by the rest, one at a time, by exact LP."""
    if sys.is_infeasible:
        return LinSystem.infeasible(sys.vars)
    rows = _tidy(sys.ineqs)
    return sys.with_rows(_prune(rows, candidates=range(len(rows)), vars=sys.vars))


def _prune(rows: list[LinIneq], candidates: Iterable[int], vars: Sequence[str]) -> list[LinIneq]:
    alive = [True] * len(rows)
    for i in candidates:
        if rows[i].relation != LE:
            continue
        others = [r for j, r in enumerate(rows) if j != i and alive[j]]
        if is_implied(rows[i], others, vars):
            alive[i] = False
    return [r for r, keep in zip(rows, alive) if keep]


def _choose_variable(rows: Sequence[LinIneq], pending: Sequence[str]) -> tuple[str, str]:
    for var in pending:
        if any(r.relation == EQ and r.coeff(var) != 0 for r in rows):
            return var, "substitution"
    best = None
    for var in pending:
        lower, upper, _ = _split(rows, var)
        cost = len(lower) * len(upper)
        if best is None or cost < best[0]:
            best = (cost, var)
    return best[1], "pairing"


def eliminate_all(
    sys: LinSystem,
    vars_to_remove: Sequence[str],
    order: Optional[Sequence[str]] = None,
    trace: Optional[TraceCallback] = None,
) -> LinSystem:
    """
    Eliminate several variables with redundancy pruning after each step.

    The next variable is one that can be substituted from an equality if
    any; otherwise the one minimizing (#lower bounds) x (#upper bounds).
    Passing ``order`` fixes the sequence instead.

    Args:
        sys: System to project
        vars_to_remove: Variables to eliminate
        order: Optional explicit elimination order
        trace: Called with an ``EliminationStep`` after every step

    Returns:
        Pruned system over the remaining variables
    """
    unknown = set(vars_to_remove) - set(sys.vars)
    if unknown:
        raise PolyhedralError(f"cannot eliminate unknown variable(s) {sorted(unknown)}")
    if not vars_to_remove:
        return sys
    if order is not None and set(order) != set(vars_to_remove):
        raise PolyhedralError("explicit order must list exactly the variables to remove")

    current_vars = list(sys.vars)
    rows = _tidy(sys.ineqs)
    pending = list(order) if order is not None else list(vars_to_remove)
    fully_pruned = False
    step_index = 0

    while pending and not (len(rows) == 1 and rows[0].is_contradiction):
        if order is not None:
            var = pending[0]
            method = "substitution" if any(
                r.relation == EQ and r.coeff(var) != 0 for r in rows
            ) else "pairing"
        else:
            var, method = _choose_variable(rows, pending)
        pending.remove(var)
        current_vars.remove(var)
        before = len(rows)

        if method == "substitution":
            lower, upper, untouched = 0, 0, 0
            _, rows_next = _substitute_equality(rows, var)
            rows_next = _tidy(rows_next)
            generated = len(rows_next)
        else:
            untouched_rows = [r for r in rows if r.coeff(var) == 0]
            paired, lower, upper, untouched = _pair(rows, var)
            generated = len(paired)
            rows_next = _tidy(paired)
            if not (len(rows_next) == 1 and rows_next[0].is_contradiction):
                if fully_pruned:
                    # Rows that passed through a pruned system stay irredundant.
                    kept = set(untouched_rows)
                    fresh = [i for i, r in enumerate(rows_next) if r not in kept]
                else:
                    fresh = range(len(rows_next))
                rows_next = _prune(rows_next, fresh, current_vars)
                fully_pruned = True

        rows = rows_next
        step_index += 1
        logger.debug(
            f"FM step {step_index}: {var} by {method}, rows {before} -> {generated} -> {len(rows)}"
        )
        if trace is not None:
            trace(
                EliminationStep(
                    index=step_index,
                    variable=var,
                    method=method,
                    lower=lower,
                    upper=upper,
                    untouched=untouched,
                    rows_before=before,
                    rows_generated=generated,
                    rows_after=len(rows),
                    system=LinSystem(tuple(current_vars), tuple(rows)),
                )
            )

    for var in pending:
        current_vars.remove(var)
    result = LinSystem(tuple(current_vars), tuple(rows))
    if result.is_infeasible:
        return LinSystem.infeasible(current_vars)
    if not fully_pruned:
        result = remove_redundant(result)
    return result
