"""Exact-rational linear programming.

A two-phase tableau simplex over ``fractions.Fraction`` with Bland's rule,
solving ``min c.x  s.t.  A x = b, x >= 0``. On top of it sit the two
queries the elimination code needs: implication of one row by others
(via the Farkas dual) and feasibility of a lifted system at a fixed point.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Optional, Sequence

from secrecy_toolkit.polyhedral.system import EQ, LE, LinIneq, LinSystem, Rational, to_fraction
from secrecy_toolkit.utils.exceptions import LinearProgramError

Status = Literal["optimal", "infeasible", "unbounded"]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None


class _Tableau:
    """Dense tableau with an explicit basis; rows are lists of Fractions."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = ONE / row[c]
        if inv != ONE:
            self.rows[r] = row = [v * inv for v in row]
            self.rhs[r] *= inv
        nonzero = [j for j, v in enumerate(row) if v != 0]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            factor = other[c]
            if factor == 0:
                continue
            for j in nonzero:
                other[j] -= factor * row[j]
            self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
        reduced = list(cost)
        value = ZERO
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb == 0:
                continue
            row = self.rows[i]
            for j, v in enumerate(row):
                if v != 0:
                    reduced[j] -= cb * v
            value += cb * self.rhs[i]
        return reduced, value

    def run(self, cost: Sequence[Fraction], allowed: int, max_iter: int = 100_000) -> Status:
        """Minimize ``cost`` over columns ``< allowed`` with Bland's rule."""
        for _ in range(max_iter):
            reduced, _ = self.reduced_costs(cost)
            entering = next((j for j in range(allowed) if reduced[j] < 0), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)
        raise LinearProgramError(f"no convergence within {max_iter} pivots")


def solve_standard_form(
    cost: Sequence[Rational],
    matrix: Sequence[Sequence[Rational]],
    rhs: Sequence[Rational],
) -> LPResult:
    """Minimize ``cost . x`` subject to ``matrix x = rhs`` and ``x >= 0``."""
    n = len(cost)
    c = [to_fraction(v) for v in cost]
    rows = [[to_fraction(v) for v in row] for row in matrix]
    b = [to_fraction(v) for v in rhs]
    if any(len(row) != n for row in rows) or len(rows) != len(b):
        raise LinearProgramError("constraint matrix shape does not match cost/rhs")

    for i in range(len(rows)):
        if b[i] < 0:
            rows[i] = [-v for v in rows[i]]
            b[i] = -b[i]

    m = len(rows)
    if m == 0:
        if any(v < 0 for v in c):
            return LPResult("unbounded")
        return LPResult("optimal", ZERO, tuple(ZERO for _ in range(n)))

    # Phase 1: artificial columns n..n+m-1 start in the basis.
    for i, row in enumerate(rows):
        row.extend(ONE if k == i else ZERO for k in range(m))
    tab = _Tableau(rows, b, list(range(n, n + m)))
    phase1_cost = [ZERO] * n + [ONE] * m
    tab.run(phase1_cost, allowed=n + m)
    _, infeasibility = tab.reduced_costs(phase1_cost)
    if infeasibility > 0:
        return LPResult("infeasible")

    # Drive remaining artificials out of the basis; drop rows that are dependent.
    keep = []
    for i in range(len(tab.rows)):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                continue
            tab.pivot(i, col)
        keep.append(i)
    tab.rows = [tab.rows[i][:n] for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    status = tab.run(c, allowed=n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [ZERO] * n
    for i, b_idx in enumerate(tab.basis):
        x[b_idx] = tab.rhs[i]
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    return LPResult("optimal", value, tuple(x))


def _dual_columns(rows: Sequence[LinIneq]) -> list[tuple[LinIneq, Fraction]]:
    """Nonnegative multiplier columns: one per inequality, two per equality."""
    columns = []
    for row in rows:
        columns.append((row, ONE))
        if row.relation == EQ:
            columns.append((row, -ONE))
    return columns


def is_implied(candidate: LinIneq, others: Sequence[LinIneq], vars: Sequence[str]) -> bool:
    """
    Whether ``others`` imply the inequality ``candidate``.

    Uses the affine Farkas lemma: the candidate a.x <= beta is implied by a
    feasible system iff some nonnegative combination of its rows reproduces
    a with right-hand side at most beta. An unbounded dual means the other
    rows are themselves infeasible, which implies anything.
    """
    if candidate.relation != LE:
        raise LinearProgramError("only inequalities can be tested for redundancy")
    if candidate.is_trivial:
        return candidate.rhs >= 0
    columns = _dual_columns(others)
    if not columns:
        return False
    names = sorted(set(vars) | candidate.variables)
    matrix = [[sign * row.coeff(name) for row, sign in columns] for name in names]
    target = [candidate.coeff(name) for name in names]
    cost = [sign * row.rhs for row, sign in columns]
    result = solve_standard_form(cost, matrix, target)
    if result.status == "infeasible":
        return False
    if result.status == "unbounded":
        return True
    return result.value <= candidate.rhs


def is_feasible(sys: LinSystem, fixed: Optional[Mapping[str, Rational]] = None) -> bool:
    """
    Whether ``sys`` has a solution once the variables in ``fixed`` are pinned.

    Free variables are unrestricted in sign. Infeasibility is certified by a
    normalized Farkas multiplier: y >= 0 with y.A = 0 and y.b < 0.
    """
    fixed = {k: to_fraction(v) for k, v in (fixed or {}).items()}
    free = [name for name in sys.vars if name not in fixed]
    reduced = []
    for row in sys.ineqs:
        shift = sum((v * fixed[k] for k, v in row.terms if k in fixed), ZERO)
        reduced.append(
            LinIneq(tuple((k, v) for k, v in row.terms if k not in fixed), row.rhs - shift, row.relation)
        )
    if any(row.is_contradiction for row in reduced):
        return False
    columns = _dual_columns([row for row in reduced if not row.is_trivial])
    if not columns:
        return True
    matrix = [[sign * row.coeff(name) for row, sign in columns] for name in free]
    matrix.append([ONE] * len(columns))
    target = [ZERO] * len(free) + [ONE]
    cost = [sign * row.rhs for row, sign in columns]
    result = solve_standard_form(cost, matrix, target)
    if result.status == "infeasible":
        # no multiplier cancels the free variables, so no certificate exists
        return True
    if result.status != "optimal":
        raise LinearProgramError(f"feasibility certificate LP ended as {result.status}")
    return result.value >= 0
