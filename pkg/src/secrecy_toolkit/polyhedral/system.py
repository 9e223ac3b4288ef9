"""Exact-rational linear inequality systems over named variables.

Plain-text form, one row per line::

    2*R1 + -1/3*Rd <= 5/4
    R1 + -1*R1a + -1*R1b == 0
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from secrecy_toolkit.utils.exceptions import InequalityParseError, PolyhedralError

LE = "<="
EQ = "=="

Rational = Fraction | int | str


def to_fraction(value: Rational | float, digits: Optional[int] = None) -> Fraction:
    """Exact rational from an int, ``p/q`` string, Fraction or float.

    Floats are first rounded to ``digits`` decimals when given, so that
    irrational information terms enter the system reproducibly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if digits is not None:
            return Fraction(f"{round(value, digits):.{digits}f}")
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True)
class LinIneq:
    """``sum(coeff * var) <= rhs`` or ``== rhs`` with rational data.

    ``terms`` holds the nonzero coefficients sorted by variable name.
    """

    terms: tuple[tuple[str, Fraction], ...]
    rhs: Fraction
    relation: str = LE

    def __post_init__(self):
        if self.relation not in (LE, EQ):
            raise PolyhedralError(f"unknown relation {self.relation!r}")
        raw = self.terms if isinstance(self.terms, Mapping) else dict(self.terms)
        exact = ((str(k), to_fraction(v)) for k, v in raw.items())
        terms = tuple(sorted((k, v) for k, v in exact if v != 0))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "rhs", to_fraction(self.rhs))

    @classmethod
    def le(cls, coeffs: Mapping[str, Rational], rhs: Rational) -> "LinIneq":
        return cls(tuple(coeffs.items()), to_fraction(rhs), LE)

    @classmethod
    def ge(cls, coeffs: Mapping[str, Rational], rhs: Rational) -> "LinIneq":
        return cls(tuple((k, -to_fraction(v)) for k, v in coeffs.items()), -to_fraction(rhs), LE)

    @classmethod
    def eq(cls, coeffs: Mapping[str, Rational], rhs: Rational) -> "LinIneq":
        return cls(tuple(coeffs.items()), to_fraction(rhs), EQ)

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self.terms)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.terms)

    def coeff(self, name: str) -> Fraction:
        for var, value in self.terms:
            if var == name:
                return value
        return Fraction(0)

    @property
    def is_trivial(self) -> bool:
        """No variable has a nonzero coefficient."""
        return not self.terms

    @property
    def is_contradiction(self) -> bool:
        if not self.is_trivial:
            return False
        return self.rhs < 0 if self.relation == LE else self.rhs != 0

    def scaled(self, factor: Fraction) -> "LinIneq":
        if factor <= 0 and self.relation == LE:
            raise PolyhedralError("inequalities may only be scaled by positive factors")
        return LinIneq(tuple((k, v * factor) for k, v in self.terms), self.rhs * factor, self.relation)

    def normalized(self) -> "LinIneq":
        """Canonical scaling: leading coefficient has magnitude 1 (and sign +1 for equalities)."""
        if self.is_trivial:
            if self.relation == LE:
                sign = (self.rhs > 0) - (self.rhs < 0)
                return LinIneq((), Fraction(sign), LE)
            return LinIneq((), Fraction(0 if self.rhs == 0 else 1), EQ)
        lead = self.terms[0][1]
        factor = 1 / lead if self.relation == EQ else 1 / abs(lead)
        return LinIneq(tuple((k, v * factor) for k, v in self.terms), self.rhs * factor, self.relation)

    def substitute(self, name: str, expr: Mapping[str, Fraction], const: Fraction) -> "LinIneq":
        """Replace ``name`` by ``sum(expr) + const``."""
        c = self.coeff(name)
        if c == 0:
            return self
        coeffs = self.coeffs
        del coeffs[name]
        for var, value in expr.items():
            coeffs[var] = coeffs.get(var, Fraction(0)) + c * value
        return LinIneq(tuple(coeffs.items()), self.rhs - c * const, self.relation)

    def lhs(self, point: Mapping[str, Rational]) -> Fraction:
        return sum((v * to_fraction(point[k]) for k, v in self.terms), Fraction(0))

    def satisfied_by(self, point: Mapping[str, Rational]) -> bool:
        value = self.lhs(point)
        return value <= self.rhs if self.relation == LE else value == self.rhs

    def format(self) -> str:
        if self.is_trivial:
            left = "0"
        else:
            left = " + ".join(f"{v}*{k}" for k, v in self.terms)
        return f"{left} {self.relation} {self.rhs}"

    def __str__(self) -> str:
        return self.format()


def combine(first: LinIneq, second: LinIneq, w1: Fraction, w2: Fraction) -> LinIneq:
    """Row ``w1*first + w2*second`` (both weights positive for inequalities)."""
    merged = {k: w1 * v for k, v in first.terms}
    for var, value in second.terms:
        merged[var] = merged.get(var, Fraction(0)) + w2 * value
    relation = EQ if first.relation == EQ and second.relation == EQ else LE
    return LinIneq(tuple(merged.items()), w1 * first.rhs + w2 * second.rhs, relation)


@dataclass(frozen=True, eq=False)
class LinSystem:
    """Named-variable system; every coefficient key must appear in ``vars``."""

    vars: tuple[str, ...]
    ineqs: tuple[LinIneq, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "ineqs", tuple(self.ineqs))
        known = set(self.vars)
        for row in self.ineqs:
            missing = row.variables - known
            if missing:
                raise PolyhedralError(
                    f"row '{row}' uses undeclared variable(s) {sorted(missing)}"
                )

    @classmethod
    def infeasible(cls, vars: Sequence[str]) -> "LinSystem":
        return cls(tuple(vars), (LinIneq((), Fraction(-1), LE),))

    @property
    def is_infeasible(self) -> bool:
        """True when a contradictory var-free row is present."""
        return any(row.is_contradiction for row in self.ineqs)

    @property
    def inequalities(self) -> tuple[LinIneq, ...]:
        return tuple(row for row in self.ineqs if row.relation == LE)

    @property
    def equalities(self) -> tuple[LinIneq, ...]:
        return tuple(row for row in self.ineqs if row.relation == EQ)

    def with_rows(self, rows: Iterable[LinIneq], vars: Optional[Sequence[str]] = None) -> "LinSystem":
        return LinSystem(tuple(vars) if vars is not None else self.vars, tuple(rows))

    def contains(self, point: Mapping[str, Rational]) -> bool:
        """Exact membership of a rational point (missing variables read as 0)."""
        full = {name: to_fraction(point.get(name, 0)) for name in self.vars}
        return all(row.satisfied_by(full) for row in self.ineqs)

    def format(self) -> str:
        return "\n".join(row.format() for row in self.ineqs)

    @classmethod
    def parse(cls, text: str, vars: Optional[Sequence[str]] = None) -> "LinSystem":
        """Parse the plain-text form; blank lines and ``#`` comments are skipped."""
        rows = []
        seen: list[str] = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            row = parse_inequality(line, line_no)
            rows.append(row)
            for name, _ in row.terms:
                if name not in seen:
                    seen.append(name)
        declared = list(vars) if vars is not None else seen
        return cls(tuple(declared), tuple(rows))


_RELATION = re.compile(r"(<=|>=|==|=)")
_TERM = re.compile(
    r"^(?P<coef>[+-]?\s*(?:\d+(?:\.\d+)?(?:/\d+)?)?)\s*\*?\s*(?P<var>[A-Za-z_][A-Za-z0-9_]*)$"
)


def parse_inequality(text: str, line_no: int = 1) -> LinIneq:
    """Parse one row such as ``1/2*R1 + -R2 <= 3``."""
    parts = _RELATION.split(text)
    if len(parts) != 3:
        raise InequalityParseError(line_no, text, "expected exactly one of <=, >=, ==")
    left, relation, right = (p.strip() for p in parts)
    try:
        rhs = Fraction(right.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise InequalityParseError(line_no, text, f"bad right-hand side {right!r}") from None

    coeffs: dict[str, Fraction] = {}
    if left.replace(" ", "") != "0":
        normalized = re.sub(r"(?<=[\w)])\s*-\s*", " + -", left)
        for chunk in normalized.split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            match = _TERM.match(chunk)
            if match is None:
                raise InequalityParseError(line_no, text, f"bad term {chunk!r}")
            coef_text = match.group("coef").replace(" ", "")
            if coef_text in ("", "+"):
                coef = Fraction(1)
            elif coef_text == "-":
                coef = Fraction(-1)
            else:
                try:
                    coef = Fraction(coef_text)
                except ZeroDivisionError:
                    raise InequalityParseError(line_no, text, "zero denominator") from None
            var = match.group("var")
            coeffs[var] = coeffs.get(var, Fraction(0)) + coef

    if relation == ">=":
        return LinIneq.ge(coeffs, rhs)
    if relation in ("==", "="):
        return LinIneq.eq(coeffs, rhs)
    return LinIneq.le(coeffs, rhs)

